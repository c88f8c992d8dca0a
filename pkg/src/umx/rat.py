"""Exact nonnegative rationals and their canonical string form.

Every distance and radius is a :class:`fractions.Fraction`.  The wire
format is ``"p"`` or ``"p/q"`` with ``gcd(p, q) == 1`` and ``q > 1``;
anything else (``"2/4"``, ``"3/1"``, ``"007"``, ``"-1"``, ``"0.5"``) is
rejected so that a document has exactly one spelling per value.
"""

import re
from fractions import Fraction
from math import gcd

from .errors import RatParseError

Rat = Fraction

_RAT_RE = re.compile(r"(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?\Z")


def parse_rat(text) -> Fraction:
    """Parse a canonical rational string (nonnegative JSON ints also pass)."""
    if isinstance(text, bool):
        raise RatParseError(f"expected a rational, got boolean {text!r}")
    if isinstance(text, int):
        if text < 0:
            raise RatParseError(f"negative distance {text}")
        return Fraction(text)
    if not isinstance(text, str):
        raise RatParseError(f"expected a rational string like '3/4', got {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise RatParseError(f"malformed rational {text!r} (expected 'p' or 'p/q')")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 1:
        raise RatParseError(f"non-canonical rational {text!r}: write {num!r}")
    g = gcd(num, den)
    if g != 1:
        raise RatParseError(
            f"non-canonical rational {text!r}: reduce to '{num // g}/{den // g}'"
            if den // g != 1
            else f"non-canonical rational {text!r}: reduce to '{num // g}'"
        )
    return Fraction(num, den)


def format_rat(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and canonical strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise RatParseError(f"float {value!r} refused; distances must be exact")
    return parse_rat(value)
