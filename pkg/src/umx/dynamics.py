"""Self-maps of finite ultrametric spaces.

Covers orbit structure, the nonexpansive / strictly contractive map
classes, minimal invariant balls, the fixed-point-or-minimal-ball
dichotomy for nonexpansive maps, the four-way classification of
noncyclic nonexpansive maps on a separated pair, the two fixed-point
results built on it, and randomized searches for counterexamples to the
two open conjectures.

Balls "in A" are closed balls of the subspace ``A``; the ambient space
only supplies distances.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Optional, Union

from . import kernels
from .core import Space, _points, ball_tree, closed_ball, dist_set_set, subspace
from .errors import DomainMismatch, PreconditionFailed, SpaceFormatError, TheoremViolation
from .proximity import check_separation, pair_to_json, proximity_sets
from .rat import format_rat

STATEMENTS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class SelfMap:
    """A total map on ``domain`` given by a lookup table."""

    domain: frozenset
    table: tuple  # sorted (x, F(x)) items

    def __post_init__(self):
        keys = {x for x, _ in self.table}
        if keys != set(self.domain):
            raise DomainMismatch("map table must be total on its domain and nothing else")
        bad = sorted(y for _, y in self.table if y not in self.domain)
        if bad:
            raise DomainMismatch(f"image leaves the domain: {bad}")

    @classmethod
    def from_dict(cls, table: dict) -> "SelfMap":
        return cls(frozenset(table), tuple(sorted(table.items())))

    @classmethod
    def identity(cls, domain) -> "SelfMap":
        return cls.from_dict({x: x for x in domain})

    @cached_property
    def mapping(self) -> dict:
        return dict(self.table)

    def __call__(self, x):
        try:
            return self.mapping[x]
        except KeyError:
            raise DomainMismatch(f"{x!r} is outside the map's domain") from None

    def image(self, S) -> frozenset:
        m = self.mapping
        return frozenset(m[x] for x in S)

    def to_json(self) -> dict:
        return {"domain": sorted(self.domain), "table": dict(self.table)}

    def index_image(self, space: Space) -> array:
        """Image as kernel input: ``out[i]`` is the index of ``F(labels[i])`` or -1."""
        out = array("q", [-1] * len(space))
        for x, y in self.table:
            out[space.idx(x)] = space.idx(y)
        return out


def map_from_json(doc) -> SelfMap:
    if not isinstance(doc, dict) or "domain" not in doc or "table" not in doc:
        raise SpaceFormatError('map document needs "domain" and "table" keys')
    table = doc["table"]
    if not isinstance(table, dict):
        raise SpaceFormatError('"table" must be an object')
    if set(doc["domain"]) != set(table) or len(set(doc["domain"])) != len(doc["domain"]):
        raise DomainMismatch('"domain" must list exactly the keys of "table"')
    return SelfMap.from_dict(table)


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome plus the first counterexample when it is false."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class OrbitDecomposition:
    tail: tuple
    cycle: tuple
    gaps: tuple

    def to_json(self):
        return {
            "tail": list(self.tail),
            "cycle": list(self.cycle),
            "gaps": [format_rat(g) for g in self.gaps],
        }


@dataclass(frozen=True, order=True)
class MinimalBall:
    radius: Fraction
    members: tuple = field(compare=True)  # sorted labels
    center: str = field(compare=False, default="")

    @property
    def points(self) -> frozenset:
        return frozenset(self.members)

    def to_json(self):
        return {"center": self.center, "radius": format_rat(self.radius), "members": list(self.members)}


@dataclass(frozen=True)
class FixedPoint:
    point: str


@dataclass(frozen=True)
class Classification:
    statement: str
    a_star: str
    b_star: str
    ballA: Optional[MinimalBall] = None
    ballB: Optional[MinimalBall] = None

    def to_json(self):
        return {
            "statement": self.statement,
            "a_star": self.a_star,
            "b_star": self.b_star,
            "ballA": None if self.ballA is None else self.ballA.to_json(),
            "ballB": None if self.ballB is None else self.ballB.to_json(),
        }


class Thm213Result(NamedTuple):
    p: str
    certified: bool


def _ball(center, radius, members) -> MinimalBall:
    return MinimalBall(radius=radius, members=tuple(sorted(members)), center=center)


def _maps_into(F: SelfMap, S) -> bool:
    m = F.mapping
    return all(x in m and m[x] in S for x in S)


def _require_into(F, S):
    if not S <= F.domain:
        raise DomainMismatch(f"points outside the map's domain: {sorted(S - F.domain)}")
    if not _maps_into(F, S):
        raise DomainMismatch("map does not send the set into itself")


def instance_json(space, A=None, B=None, F=None) -> dict:
    doc = {"space": space.to_json()}
    if A is not None:
        doc.update(pair_to_json(A, B))
    if F is not None:
        doc["map"] = F.to_json()
    return doc


# -- map classes -----------------------------------------------------------


def is_noncyclic(F: SelfMap, A, B) -> bool:
    A = frozenset(A)
    B = frozenset(B)
    if F.domain != A | B:
        raise DomainMismatch("map domain must equal A u B")
    return F.image(A) <= A and F.image(B) <= B


def _expansion(space, F, S, strict) -> Verdict:
    S = _points(space, S, nonempty=False)
    if not S <= F.domain:
        raise DomainMismatch(f"points outside the map's domain: {sorted(S - F.domain)}")
    order = sorted(S)
    subset = array("q", [space.idx(x) for x in order])
    hit = kernels.first_expansion(space.rank, len(space), F.index_image(space), subset, strict)
    if hit is None:
        return Verdict(True)
    return Verdict(False, (space.labels[hit[0]], space.labels[hit[1]]))


def is_nonexpansive(space: Space, F: SelfMap, S) -> Verdict:
    """``d(Fx, Fy) <= d(x, y)`` on ``S``; the witness is the first failing pair."""
    return _expansion(space, F, S, strict=False)


def is_strictly_contractive(space: Space, F: SelfMap, S) -> Verdict:
    return _expansion(space, F, S, strict=True)


def is_strictly_contractive_on_orbit(space: Space, F: SelfMap, S) -> Verdict:
    S = _points(space, S, nonempty=False)
    if not S <= F.domain:
        raise DomainMismatch(f"points outside the map's domain: {sorted(S - F.domain)}")
    m = F.mapping
    for x in sorted(S):
        fx = m[x]
        if fx == x:
            continue
        if not space.d(m[fx], fx) < space.d(fx, x):
            return Verdict(False, (x,))
    return Verdict(True)


# -- orbits ----------------------------------------------------------------


def orbit(space: Space, F: SelfMap, x) -> OrbitDecomposition:
    m = F.mapping
    if x not in m:
        raise DomainMismatch(f"{x!r} is outside the map's domain")
    seq = [x]
    seen = {x: 0}
    while True:
        y = m[seq[-1]]
        if y in seen:
            start = seen[y]
            break
        seen[y] = len(seq)
        seq.append(y)
    gaps = tuple(space.d(p, m[p]) for p in seq)
    return OrbitDecomposition(tail=tuple(seq[:start]), cycle=tuple(seq[start:]), gaps=gaps)


def orbit_liminf(space: Space, F: SelfMap, x) -> Fraction:
    """``liminf d(F^n x, F^(n+1) x)``: the gap sequence is periodic on the cycle."""
    dec = orbit(space, F, x)
    return min(dec.gaps[len(dec.tail):])


def liminf_condition(space: Space, F: SelfMap, S) -> Verdict:
    """Whether ``liminf d(F^n x, F^(n+1) x) < d(x, Fx)`` for every non-fixed ``x`` in S."""
    S = _points(space, S)
    _require_into(F, S)
    m = F.mapping
    for x in sorted(S):
        if m[x] == x:
            continue
        if not orbit_liminf(space, F, x) < space.d(x, m[x]):
            return Verdict(False, (x,))
    return Verdict(True)


def fixed_points(F: SelfMap, S) -> frozenset:
    m = F.mapping
    return frozenset(x for x in S if m.get(x) == x)


# -- invariant balls -------------------------------------------------------


def invariant_balls(space: Space, F: SelfMap, S) -> list:
    """Every closed ball of the subspace ``S`` that ``F`` maps into itself."""
    S = _points(space, S)
    _require_into(F, S)
    tree = ball_tree(subspace(space, S))
    return [node for node in tree.nodes() if F.image(node.members) <= node.members]


def minimal_invariant_balls(space: Space, F: SelfMap, S) -> list:
    """Minimal invariant balls of the subspace ``S``, least radius first.

    A ball qualifies when it has positive radius, is mapped into itself,
    every member is displaced by exactly the radius, and it strictly
    contains no other invariant closed ball.
    """
    invariant = invariant_balls(space, F, S)
    m = F.mapping
    out = []
    for node in invariant:
        r = node.diam
        if r == 0:
            continue
        if any(space.d(y, m[y]) != r for y in node.members):
            continue
        if any(other.members < node.members for other in invariant):
            continue
        out.append(_ball(min(node.members), r, node.members))
    out.sort(key=lambda b: (b.radius, b.members))
    return out


def ball_at(space: Space, F: SelfMap, center, ambient) -> Optional[MinimalBall]:
    """``B(c, d(c, Fc))`` inside ``ambient`` if it is a minimal invariant ball there."""
    m = F.mapping
    r = space.d(center, m[center])
    if r == 0:
        return None
    members = closed_ball(space, center, r, within=ambient)
    if not F.image(members) <= members:
        return None
    if any(space.d(y, m[y]) != r for y in members):
        return None
    # balls of ``ambient`` inside a ball are exactly the balls of that ball
    for node in ball_tree(subspace(space, members)).nodes():
        if node.members < members and F.image(node.members) <= node.members:
            return None
    return _ball(center, r, members)


def ks_dichotomy(space: Space, F: SelfMap, x, S) -> Union[FixedPoint, MinimalBall]:
    """A fixed point or a minimal invariant ball inside ``B(x, d(x, Fx))`` of ``S``."""
    S = _points(space, S)
    _require_into(F, S)
    if x not in S:
        raise DomainMismatch(f"{x!r} is not in S")
    if not is_nonexpansive(space, F, S):
        raise PreconditionFailed("nonexpansive")
    K = closed_ball(space, x, space.d(x, F(x)), within=S)
    fixed = fixed_points(F, K)
    if fixed:
        return FixedPoint(min(fixed))
    for mb in minimal_invariant_balls(space, F, S):
        if mb.points <= K:
            return mb
    raise TheoremViolation(
        f"ball around {x!r} holds neither a fixed point nor a minimal invariant ball",
        instance_json(space, S, S, F),
    )


# -- classification of noncyclic nonexpansive maps on separated pairs -------


def _hypotheses(space, F, A, B, extra=()):
    if F.domain != A | B:
        raise PreconditionFailed("domain", "map domain must equal A u B")
    if not check_separation(space, A, B):
        raise PreconditionFailed("separation", "diameter(B) > dist(A, B)")
    if not is_noncyclic(F, A, B):
        raise PreconditionFailed("noncyclic", "F(A) must lie in A and F(B) in B")
    if "strict" in extra:
        v = is_strictly_contractive(space, F, A | B)
        if not v:
            raise PreconditionFailed("strictly contractive", f"pair {v.witness}")
    else:
        v = is_nonexpansive(space, F, A | B)
        if not v:
            raise PreconditionFailed("nonexpansive", f"pair {v.witness}")
    if "liminf" in extra:
        v = liminf_condition(space, F, A | B)
        if not v:
            raise PreconditionFailed("liminf", f"point {v.witness[0]}")


def pair_statements(space: Space, F: SelfMap, A, B, a, b) -> set:
    """Which of the four statements the pair ``(a, b)`` satisfies.

    Empty unless ``(a, b)`` is a best proximity pair of ``(A, B)``.
    Balls are taken in the subspaces ``A`` and ``B``.
    """
    A = frozenset(A)
    B = frozenset(B)
    r = dist_set_set(space, A, B)[0]
    if space.d(a, b) != r:
        return set()
    m = F.mapping
    fa = m[a] == a
    fb = m[b] == b
    ka = None if fa else ball_at(space, F, a, A)
    kb = None if fb else ball_at(space, F, b, B)
    out = set()
    if fa and fb:
        out.add("i")
    if fa and kb is not None and all(space.d(a, y) == r for y in kb.members):
        out.add("ii")
    if fb and ka is not None and all(space.d(y, b) == r for y in ka.members):
        out.add("iii")
    if ka is not None and kb is not None:
        rr = dist_set_set(space, ka.members, kb.members)[0]
        if all(space.d(x, y) == rr for x in ka.members for y in kb.members):
            out.add("iv")
    return out


def _side(space, F, S0, S):
    fixed = fixed_points(F, S0)
    if fixed:
        return min(fixed), None
    found = ks_dichotomy(space, F, min(S0), S0)
    if isinstance(found, FixedPoint):
        return found.point, None
    # a ball of the subspace S0 is also a ball of S
    if closed_ball(space, found.center, found.radius, within=S) != found.points:
        raise TheoremViolation("minimal ball of the proximity set is not a ball of its side")
    return found.center, found


def classify_theorem28(space: Space, F: SelfMap, A, B) -> Classification:
    """Classify a noncyclic nonexpansive map on a separated pair.

    Raises :class:`PreconditionFailed` naming the first failing
    hypothesis.  Witnesses are re-verified before returning.
    """
    A = _points(space, A)
    B = _points(space, B)
    _hypotheses(space, F, A, B)
    rep = proximity_sets(space, A, B)
    repro = instance_json(space, A, B, F)
    if not (F.image(rep.A0) <= rep.A0 and F.image(rep.B0) <= rep.B0):
        raise TheoremViolation("proximity sets are not invariant", repro)
    a_star, ballA = _side(space, F, rep.A0, A)
    b_star, ballB = _side(space, F, rep.B0, B)
    if ballA is None and ballB is None:
        tag = "i"
    elif ballA is None:
        tag = "ii"
    elif ballB is None:
        tag = "iii"
    else:
        tag = "iv"
    cls = Classification(tag, a_star, b_star, ballA, ballB)
    verify_classification(space, F, A, B, cls)
    return cls


def verify_classification(space: Space, F: SelfMap, A, B, cls: Classification) -> None:
    """Re-check every witness; raise :class:`TheoremViolation` on any mismatch."""
    A = frozenset(A)
    B = frozenset(B)
    repro = {**instance_json(space, A, B, F), "classification": cls.to_json()}
    wants_a = cls.statement in ("iii", "iv")
    wants_b = cls.statement in ("ii", "iv")
    if (cls.ballA is not None) != wants_a or (cls.ballB is not None) != wants_b:
        raise TheoremViolation("witness set does not match the statement", repro)
    if cls.a_star not in A or cls.b_star not in B:
        raise TheoremViolation("witness pair outside A x B", repro)
    rep = proximity_sets(space, A, B)
    if not (F.image(rep.A0) <= rep.A0 and F.image(rep.B0) <= rep.B0):
        raise TheoremViolation("proximity sets are not invariant", repro)
    for ball, star, side in ((cls.ballA, cls.a_star, A), (cls.ballB, cls.b_star, B)):
        if ball is None:
            continue
        again = ball_at(space, F, star, side)
        if again is None or again.points != ball.points or again.radius != ball.radius:
            raise TheoremViolation("ball witness fails the minimal invariant ball conditions", repro)
    got = pair_statements(space, F, A, B, cls.a_star, cls.b_star)
    if got != {cls.statement}:
        raise TheoremViolation(f"pair satisfies {sorted(got)}, expected exactly {cls.statement}", repro)


# -- fixed point results ---------------------------------------------------


def theorem211_solve(space: Space, F: SelfMap, A, B) -> tuple:
    """Common fixed points ``a`` in A and ``b`` in B at distance ``dist(A, B)``."""
    A = _points(space, A)
    B = _points(space, B)
    _hypotheses(space, F, A, B, extra=("liminf",))
    rep = proximity_sets(space, A, B)
    fa = fixed_points(F, rep.A0)
    fb = fixed_points(F, rep.B0)
    repro = instance_json(space, A, B, F)
    if not fa or not fb:
        raise TheoremViolation("no fixed point in a proximity set", repro)
    a, b = min(fa), min(fb)
    if space.d(a, b) != rep.dist:
        raise TheoremViolation("fixed points are not a best proximity pair", repro)
    return a, b


def theorem213_solve(space: Space, F: SelfMap, A, B) -> Thm213Result:
    """The unique fixed point of a strictly contractive noncyclic map, certified.

    Under the hypotheses the pair collapses: ``B == B0 == A0 == {p}``.
    """
    A = _points(space, A)
    B = _points(space, B)
    _hypotheses(space, F, A, B, extra=("strict",))
    repro = instance_json(space, A, B, F)
    fixed = fixed_points(F, A | B)
    if len(fixed) != 1:
        raise TheoremViolation(f"expected one fixed point, found {sorted(fixed)}", repro)
    (p,) = fixed
    rep = proximity_sets(space, A, B)
    certified = B == rep.B0 == rep.A0 == {p} and rep.dist == 0
    if not certified:
        raise TheoremViolation("pair does not collapse to the fixed point", repro)
    return Thm213Result(p, certified)


def strict_map_search(space: Space, A, B) -> Optional[SelfMap]:
    """First noncyclic strictly contractive map on ``A u B``, or ``None``."""
    A = _points(space, A)
    B = _points(space, B)
    in_a = array("q", [1 if x in A else 0 for x in space.labels])
    in_b = array("q", [1 if x in B else 0 for x in space.labels])
    image, _ = kernels.find_strict_noncyclic(space.rank, len(space), in_a, in_b)
    if image is None:
        return None
    return SelfMap.from_dict(
        {space.labels[i]: space.labels[j] for i, j in enumerate(image) if j >= 0}
    )


def exhaustive_strict_search(max_points=4, pool=(1, 2, 3)) -> dict:
    """Every ultrametric on at most ``max_points`` points with values in ``pool``,
    every separated pair with positive gap, every noncyclic self-map of ``A u B``:
    look for a strictly contractive one.
    """
    from .gen import enumerate_spaces

    spaces = pairs = 0
    found = None
    for space in enumerate_spaces(max_points, pool):
        spaces += 1
        labels = space.labels
        subsets = [
            frozenset(c) for k in range(1, len(labels) + 1) for c in combinations(labels, k)
        ]
        for A in subsets:
            for B in subsets:
                if not check_separation(space, A, B) or dist_set_set(space, A, B)[0] == 0:
                    continue
                pairs += 1
                F = strict_map_search(space, A, B)
                if F is not None and found is None:
                    found = instance_json(space, A, B, F)
    return {"spaces": spaces, "separated_pairs": pairs, "counterexample": found}


# -- conjecture probes -----------------------------------------------------

CONJ115_INTERPRETATION = (
    "condition (i) read as: every nonempty F-invariant subset contains a fixed point "
    "(the literal reading over all subspaces forces F to be the identity)"
)


def invariant_subsets_have_fixed_points(F: SelfMap, S) -> bool:
    """Every nonempty ``F``-invariant subset of ``S`` holds a fixed point.

    Such a subset always contains a whole cycle of ``F``, and a cycle is
    itself invariant, so this is the same as every cycle being a fixed point.
    """
    m = F.mapping
    for x in S:
        y = m[x]
        for _ in range(len(S)):
            y = m[y]
        # y now lies on the cycle of x
        if m[y] != y:
            return False
    return True


def probe_conjecture_210(space_budget, map_budget, seed, max_points=7, disjoint=False) -> dict:
    """Search non-separated pairs for a map with no admissible best proximity pair.

    With ``disjoint`` only pairs with ``A n B`` empty are drawn.
    """
    from . import gen

    if space_budget < 1 or map_budget < 1:
        raise ValueError("budgets must be positive")
    hist = {s: 0 for s in STATEMENTS}
    checked = 0
    skipped = 0
    counterexample = None
    for i in range(space_budget):
        rng = gen.make_rng(seed, 210, i)
        n = int(rng.integers(2, max_points + 1))
        space = gen.random_space(gen.GenConfig(n_points=n, seed=int(rng.integers(2**63))))
        try:
            A, B = gen.random_nonseparated_pair(space, rng, disjoint=disjoint)
        except (gen.NoProperBall, gen.GenerationExhausted):
            skipped += 1
            continue
        for j in range(map_budget):
            F = gen.random_noncyclic_nonexpansive_map(space, A, B, gen.make_rng(seed, 210, i, j))
            checked += 1
            rep = proximity_sets(space, A, B)
            found = set()
            for a, b in rep.pairs:
                found |= pair_statements(space, F, A, B, a, b)
            for s in found:
                hist[s] += 1
            if not found and counterexample is None:
                counterexample = {"index": [i, j], **instance_json(space, A, B, F)}
    return {
        "conjecture": "210",
        "disjoint_only": disjoint,
        "instances_checked": checked,
        "skipped": skipped,
        "statement_histogram": hist,
        "counterexample": counterexample,
    }


def probe_conjecture_115(space_budget, map_budget, seed, max_points=8) -> dict:
    """Compare the two conditions of the conjecture on random nonexpansive maps."""
    from . import gen

    if space_budget < 1 or map_budget < 1:
        raise ValueError("budgets must be positive")
    tally = {"consistent": 0, "inconsistent": 0, "both_true": 0, "both_false": 0}
    checked = 0
    counterexample = None
    for i in range(space_budget):
        rng = gen.make_rng(seed, 115, i)
        n = int(rng.integers(1, max_points + 1))
        space = gen.random_space(gen.GenConfig(n_points=n, seed=int(rng.integers(2**63))))
        M = space.points
        for j in range(map_budget):
            F = gen.random_noncyclic_nonexpansive_map(space, M, M, gen.make_rng(seed, 115, i, j))
            checked += 1
            cond_i = invariant_subsets_have_fixed_points(F, M)
            cond_ii = bool(liminf_condition(space, F, M))
            if cond_i == cond_ii:
                tally["consistent"] += 1
                tally["both_true" if cond_i else "both_false"] += 1
            else:
                tally["inconsistent"] += 1
                if counterexample is None:
                    counterexample = {
                        "index": [i, j],
                        "condition_i": cond_i,
                        "condition_ii": cond_ii,
                        **instance_json(space, F=F),
                    }
    return {
        "conjecture": "115",
        "interpretation": CONJ115_INTERPRETATION,
        "instances_checked": checked,
        "tally": tally,
        "counterexample": counterexample,
    }
