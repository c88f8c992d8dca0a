"""Randomized theorem-check suites behind ``umx check``.

Each suite draws ``count`` instances from independent seeded streams
(instance ``i`` uses stream ``(seed, suite, i)``), checks its properties
and aggregates per-property verdicts.  A failing verdict keeps the first
failing instance as a JSON repro.
"""

from __future__ import annotations

from . import gen
from .dynamics import (
    classify_theorem28,
    instance_json,
    is_noncyclic,
    is_nonexpansive,
    liminf_condition,
    theorem211_solve,
    theorem213_solve,
)
from .errors import GenerationExhausted, TheoremViolation
from .proximity import (
    corollary27_check,
    cross_distance_constant,
    lemma21_check,
    lemma23_identity,
    lemma24_check,
    proximity_sets,
    theorem25_report,
)

SUITES = ("lemma21", "lemma23", "lemma24", "thm25", "thm28", "thm211", "thm213")
_CODES = {name: k for k, name in enumerate(SUITES, start=1)}


class Tally:
    def __init__(self):
        self.verdicts = {}
        self.counters = {}

    def record(self, prop, ok, repro=None):
        v = self.verdicts.setdefault(prop, {"property": prop, "pass": True, "checked": 0, "failures": 0, "witness": None})
        v["checked"] += 1
        if not ok:
            v["failures"] += 1
            if v["pass"]:
                v["pass"] = False
                v["witness"] = repro
        return ok

    def bump(self, key, by=1):
        self.counters[key] = self.counters.get(key, 0) + by

    @property
    def failures(self):
        return sum(v["failures"] for v in self.verdicts.values())


def draw_space(rng, max_points):
    n = int(rng.integers(1, max_points + 1))
    return gen.random_space(gen.GenConfig(n_points=n, seed=int(rng.integers(2**63))))


def draw_separated(space, rng):
    """A strictly separated pair, or the degenerate ``A = B = {p}`` on one point."""
    if len(space) == 1:
        p = space.labels[0]
        return frozenset({p}), frozenset({p})
    return gen.random_separated_pair(space, rng)


def _guard(tally, prop, fn, repro):
    try:
        return tally.record(prop, bool(fn()), repro)
    except TheoremViolation as exc:
        tally.record(prop, False, exc.instance or repro)
        return False


def check_lemma21(tally, space, rng):
    A, B = draw_separated(space, rng)
    repro = instance_json(space, A, B)
    _guard(tally, "lemma21", lambda: all(lemma21_check(space, A, B).values()), repro)
    tally.record("cross_distance_constant", cross_distance_constant(space, A, B), repro)


def check_lemma23(tally, space, rng):
    A, B = draw_separated(space, rng)
    repro = instance_json(space, A, B)
    tally.record(
        "lemma23_sphere_and_ball",
        all(lemma23_identity(space, A, B, b0)["equal"] for b0 in sorted(B)),
        repro,
    )


def check_lemma24(tally, space, rng):
    tally.record("lemma24_outside_equidistance", lemma24_check(space) is None, instance_json(space))


def check_thm25(tally, space, rng):
    A, B = draw_separated(space, rng)
    repro = instance_json(space, A, B)
    rep = theorem25_report(space, A, B)
    tally.record("thm25_equivalence_separated", rep.equivalent and rep.stmt_ii, repro)
    tally.record("corollary27", corollary27_check(space, A, B), repro)
    A2, B2 = gen.random_pair(space, rng)
    repro2 = instance_json(space, A2, B2)
    rep2 = theorem25_report(space, A2, B2)
    tally.record("thm25_equivalence_arbitrary", rep2.equivalent, repro2)
    tally.bump("arbitrary_pairs_separated" if rep2.stmt_ii else "arbitrary_pairs_nonseparated")


def check_thm28(tally, space, rng):
    A, B = draw_separated(space, rng)
    F = gen.random_noncyclic_nonexpansive_map(space, A, B, rng)
    repro = instance_json(space, A, B, F)
    tally.record("generator_sound", is_noncyclic(F, A, B) and bool(is_nonexpansive(space, F, A | B)), repro)
    rep = proximity_sets(space, A, B)
    tally.record(
        "proximity_sets_invariant",
        F.image(rep.A0) <= rep.A0 and F.image(rep.B0) <= rep.B0,
        repro,
    )

    def run():
        cls = classify_theorem28(space, F, A, B)
        tally.bump(f"statement_{cls.statement}")
        return True

    _guard(tally, "thm28_classification", run, repro)


def check_thm211(tally, space, rng, tries=8):
    A, B = draw_separated(space, rng)
    for _ in range(tries):
        F = gen.random_noncyclic_nonexpansive_map(space, A, B, rng)
        if liminf_condition(space, F, A | B):
            break
    else:
        tally.bump("skipped_no_liminf_map")
        return
    repro = instance_json(space, A, B, F)

    def run():
        a, b = theorem211_solve(space, F, A, B)
        return F(a) == a and F(b) == b and space.d(a, b) == proximity_sets(space, A, B).dist

    _guard(tally, "thm211_common_fixed_points", run, repro)


def check_thm213(tally, space, rng):
    if rng.random() < 0.5:
        p = space.labels[int(rng.integers(len(space)))]
        A = gen.random_subset(rng, space.points) | {p}
        B = frozenset({p})
    else:
        A, B = draw_separated(space, rng)
    r = proximity_sets(space, A, B).dist
    try:
        F = gen.random_noncyclic_nonexpansive_map(space, A, B, rng, strict=True)
    except GenerationExhausted:
        tally.bump("no_strict_map")
        tally.record("thm213_no_strict_map_needs_positive_gap", r > 0, instance_json(space, A, B))
        return
    repro = instance_json(space, A, B, F)
    tally.record("thm213_strict_map_needs_zero_gap", r == 0, repro)
    _guard(tally, "thm213_collapse", lambda: theorem213_solve(space, F, A, B).certified, repro)


_CHECKS = {
    "lemma21": check_lemma21,
    "lemma23": check_lemma23,
    "lemma24": check_lemma24,
    "thm25": check_thm25,
    "thm28": check_thm28,
    "thm211": check_thm211,
    "thm213": check_thm213,
}


def run_suite(name, count, seed, max_points=12) -> dict:
    names = SUITES if name == "all" else (name,)
    if count < 1:
        raise ValueError("count must be at least 1")
    out = {}
    for suite in names:
        tally = Tally()
        check = _CHECKS[suite]
        for i in range(count):
            rng = gen.make_rng(seed, _CODES[suite], i)
            space = draw_space(rng, max_points)
            check(tally, space, rng)
        out[suite] = {
            "verdicts": list(tally.verdicts.values()),
            "counters": dict(sorted(tally.counters.items())),
            "failures": tally.failures,
        }
    return out
