"""Proximity sets, best proximity pairs and the structure results for separated pairs.

A pair ``(A, B)`` is *separated* when ``diameter(B) <= dist(A, B)``.  In a
finite space every nonempty subset is proximinal, so the functions here
compute everything by exhaustive enumeration and report what they found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    Space,
    _points,
    all_closed_balls,
    closed_ball,
    diameter,
    dist_point_set,
    dist_set_set,
    is_ball,
    sphere,
)
from .errors import LemmaViolation, PreconditionFailed
from .rat import format_rat


@dataclass(frozen=True)
class ProximityReport:
    A0: frozenset
    B0: frozenset
    dist: Fraction
    deltaA: Fraction
    deltaB: Fraction
    pairs: tuple
    separated: bool

    def to_json(self):
        return {
            "A0": sorted(self.A0),
            "B0": sorted(self.B0),
            "dist": format_rat(self.dist),
            "deltaA": format_rat(self.deltaA),
            "deltaB": format_rat(self.deltaB),
            "pairs": [list(p) for p in self.pairs],
            "separated": self.separated,
        }


@dataclass(frozen=True)
class Theorem25Report:
    stmt_i: bool
    witness: Optional[str]
    stmt_ii: bool
    stmt_iii: bool
    checks: dict
    equivalent: bool

    def to_json(self):
        return {
            "stmt_i": {"holds": self.stmt_i, "witness": self.witness},
            "stmt_ii": self.stmt_ii,
            "stmt_iii": {"holds": self.stmt_iii, "checks": dict(self.checks)},
            "equivalent": self.equivalent,
        }


def nearest_points(space: Space, x, A) -> frozenset:
    """Best approximations to ``x`` in ``A``; never empty."""
    A = _points(space, A)
    r = dist_point_set(space, x, A)
    row = space.dist[space.idx(x)]
    return frozenset(a for a in A if row[space.index[a]] == r)


def is_proximinal(space: Space, A) -> bool:
    """Literal check: every point of the space has a nearest point in ``A``."""
    A = _points(space, A)
    return all(nearest_points(space, x, A) for x in space.labels)


def proximity_sets(space: Space, A, B) -> ProximityReport:
    A = _points(space, A)
    B = _points(space, B)
    r, _ = dist_set_set(space, A, B)
    pairs = tuple(
        (a, b) for a in sorted(A) for b in sorted(B) if space.d(a, b) == r
    )
    dB = diameter(space, B)
    return ProximityReport(
        A0=frozenset(a for a, _ in pairs),
        B0=frozenset(b for _, b in pairs),
        dist=r,
        deltaA=diameter(space, A),
        deltaB=dB,
        pairs=pairs,
        separated=dB <= r,
    )


def check_separation(space: Space, A, B) -> bool:
    return diameter(space, B) <= dist_set_set(space, A, B)[0]


def lemma21_check(space: Space, A, B) -> dict:
    """For a separated pair: ``A0`` is nonempty and ``B0 == B``.

    Raises :class:`LemmaViolation` if the pair is separated and a
    conclusion fails.
    """
    A = _points(space, A)
    B = _points(space, B)
    rep = proximity_sets(space, A, B)
    out = {
        "applicable": rep.separated,
        "A0_nonempty": bool(rep.A0),
        "B0_equals_B": rep.B0 == B,
    }
    if rep.separated and not (out["A0_nonempty"] and out["B0_equals_B"]):
        raise LemmaViolation("separated pair with B0 != B or empty A0", _pair_instance(space, A, B))
    return out


def lemma23_identity(space: Space, A, B, b0) -> dict:
    """Compare ``A0`` with ``A n S(b0, r)`` and ``A n B(b0, r)``, ``r = dist(A, B)``."""
    A = _points(space, A)
    B = _points(space, B)
    if b0 not in B:
        raise PreconditionFailed("b0 in B", f"{b0!r} is not a member of B")
    if not check_separation(space, A, B):
        raise PreconditionFailed("separation", "diameter(B) > dist(A, B)")
    rep = proximity_sets(space, A, B)
    lhs = rep.A0
    s_rhs = sphere(space, b0, rep.dist, within=A)
    b_rhs = closed_ball(space, b0, rep.dist, within=A)
    return {
        "lhs": lhs,
        "sphere_rhs": s_rhs,
        "ball_rhs": b_rhs,
        "equal": lhs == s_rhs == b_rhs,
    }


def cross_distance_constant(space: Space, A, B) -> bool:
    """``d(a, b) == d(a, b')`` for every ``a`` in A and ``b, b'`` in B."""
    A = _points(space, A)
    B = sorted(_points(space, B))
    for a in A:
        row = space.dist[space.idx(a)]
        first = row[space.index[B[0]]]
        if any(row[space.index[b]] != first for b in B):
            return False
    return True


def lemma24_check(space: Space, balls=None):
    """Points outside a closed ball see all of its members at one distance.

    ``balls`` defaults to every closed ball of the space.  Returns the
    first ``(ball, outside_point)`` that fails, or ``None``.
    """
    if balls is None:
        balls = all_closed_balls(space)
    for ball in sorted(balls, key=lambda s: (len(s), sorted(s))):
        members = sorted(ball)
        for x in space.labels:
            if x in ball:
                continue
            row = space.dist[space.index[x]]
            first = row[space.index[members[0]]]
            if any(row[space.index[m]] != first for m in members):
                return ball, x
    return None


def theorem25_report(space: Space, A, B) -> Theorem25Report:
    A = _points(space, A)
    B = _points(space, B)
    rep = proximity_sets(space, A, B)
    r = rep.dist

    witness = None
    for a in sorted(A):
        row = space.dist[space.index[a]]
        if all(row[space.index[b]] == r for b in B):
            witness = a
            break
    stmt_i = witness is not None

    stmt_ii = rep.separated

    checks = {
        "B0_equals_B": rep.B0 == B,
        "dist_A0_B0_equals_dist": dist_set_set(space, rep.A0, rep.B0)[0] == r,
        "all_pairs_best": all(
            space.d(a, b) == r for a in rep.A0 for b in rep.B0
        ),
        "A0_proximinal": is_proximinal(space, rep.A0),
        "B0_proximinal": is_proximinal(space, rep.B0),
    }
    stmt_iii = all(checks.values())
    return Theorem25Report(
        stmt_i=stmt_i,
        witness=witness,
        stmt_ii=stmt_ii,
        stmt_iii=stmt_iii,
        checks=checks,
        equivalent=stmt_i == stmt_ii == stmt_iii,
    )


def corollary27_check(space: Space, A, B) -> bool:
    """A separated pair has nonempty ``A0``, ``B0`` with ``A0`` a closed ball of ``A``."""
    A = _points(space, A)
    B = _points(space, B)
    if not check_separation(space, A, B):
        raise PreconditionFailed("separation", "diameter(B) > dist(A, B)")
    rep = proximity_sets(space, A, B)
    if not rep.A0 or not rep.B0:
        return False
    return is_ball(space, rep.A0, within=A) is not None


def pair_to_json(A, B) -> dict:
    return {"A": sorted(A), "B": sorted(B)}


def _pair_instance(space, A, B):
    return {"space": space.to_json(), **pair_to_json(A, B)}
