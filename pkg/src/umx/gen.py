"""Seeded instance generators.

Randomness comes from NumPy's ``PCG64`` bit generator seeded through a
``SeedSequence`` built from ``(seed, *stream_keys)``; the same seed and
keys always give the same stream, independently of other streams.

Spaces are built from random dendrograms (distance = level of the lowest
common ancestor), so they are ultrametric by construction.  Maps are
sampled top-down over the ball tree: a map is nonexpansive exactly when
every ball is sent into a ball of no larger diameter, and strictly
contractive exactly when every non-singleton ball is sent into a ball of
strictly smaller diameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

import numpy as np

from .core import Space, _points, ball_tree, find_violations, subspace, validate_ultrametric
from .dynamics import SelfMap
from .errors import GenerationExhausted, NoProperBall, PoolTooShallow
from .proximity import check_separation
from .rat import as_rat

DEFAULT_POOL = tuple(Fraction(k) for k in range(1, 9))


def make_rng(seed, *stream) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, stream)])))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed)


@dataclass(frozen=True)
class GenConfig:
    n_points: int
    seed: int = 0
    value_pool: tuple = DEFAULT_POOL
    branching: int = 3

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be at least 1")
        if self.branching < 2:
            raise ValueError("branching must be at least 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        pool = tuple(as_rat(v) for v in self.value_pool)
        if not pool or any(v <= 0 for v in pool):
            raise ValueError("value_pool must hold positive rationals")
        if any(a >= b for a, b in zip(pool, pool[1:])):
            raise ValueError("value_pool must be strictly increasing")
        object.__setattr__(self, "value_pool", pool)


class Instance(NamedTuple):
    space: Space
    A: frozenset
    B: frozenset


class Example29(NamedTuple):
    space: Space
    A: frozenset
    B: frozenset
    maps: tuple


def _labels(n):
    width = len(str(n - 1))
    return [f"p{i:0{width}d}" for i in range(n)]


def _levels_needed(m, b):
    h, cap = 0, 1
    while cap < m:
        h += 1
        cap *= b
    return h


def random_space(cfg: GenConfig) -> Space:
    """A random ultrametric space with ``cfg.n_points`` points."""
    rng = make_rng(cfg.seed, 0)
    pool, b = cfg.value_pool, cfg.branching
    n = cfg.n_points
    labels = _labels(n)
    dist = [[Fraction(0)] * n for _ in range(n)]
    if _levels_needed(n, b) > len(pool):
        raise PoolTooShallow(
            f"{n} points with branching {b} need {_levels_needed(n, b)} levels, pool has {len(pool)}"
        )

    def split(points, top):
        m = len(points)
        if m == 1:
            return
        lo = _levels_needed(m, b) - 1
        level = int(rng.integers(lo, top + 1))
        cap = b ** level
        k = int(rng.integers(max(2, -(-m // cap)), min(b, m) + 1))
        sizes = [1] * k
        for _ in range(m - k):
            room = [g for g in range(k) if sizes[g] < cap]
            sizes[room[int(rng.integers(len(room)))]] += 1
        order = [points[i] for i in rng.permutation(m)]
        groups = []
        start = 0
        for s in sizes:
            groups.append(order[start:start + s])
            start += s
        v = pool[level]
        for g1, g2 in combinations(groups, 2):
            for x in g1:
                for y in g2:
                    dist[x][y] = dist[y][x] = v
        for g in groups:
            split(g, level - 1)

    split(list(range(n)), len(pool) - 1)
    return Space(labels, dist, _trusted=True)


def example29() -> Example29:
    """The four-point pair with its four permutation maps."""
    one, two = Fraction(1), Fraction(2)
    labels = ["a1", "a2", "b1", "b2"]
    dist = [
        [0, one, two, two],
        [one, 0, two, two],
        [two, two, 0, one],
        [two, two, one, 0],
    ]
    space = validate_ultrametric(labels, [[Fraction(v) for v in row] for row in dist])
    maps = (
        SelfMap.from_dict({"a1": "a1", "a2": "a2", "b1": "b1", "b2": "b2"}),
        SelfMap.from_dict({"a1": "a1", "a2": "a2", "b1": "b2", "b2": "b1"}),
        SelfMap.from_dict({"a1": "a2", "a2": "a1", "b1": "b1", "b2": "b2"}),
        SelfMap.from_dict({"a1": "a2", "a2": "a1", "b1": "b2", "b2": "b1"}),
    )
    return Example29(space, frozenset({"a1", "a2"}), frozenset({"b1", "b2"}), maps)


def example22_truncation(N: int) -> Instance:
    """Points ``1..2N`` with ``d(n, m) = max(1/n, 1/m) = 1/min(n, m)``; evens vs odds."""
    if N < 1:
        raise ValueError("N must be at least 1")
    pts = list(range(1, 2 * N + 1))
    dist = [[Fraction(0) if n == m else Fraction(1, min(n, m)) for m in pts] for n in pts]
    space = Space([str(n) for n in pts], dist, _trusted=True)
    A = frozenset(str(n) for n in pts if n % 2 == 0)
    B = frozenset(str(n) for n in pts if n % 2 == 1)
    return Instance(space, A, B)


def random_subset(rng, pool) -> frozenset:
    pool = sorted(pool)
    k = int(rng.integers(1, len(pool) + 1))
    idx = rng.choice(len(pool), size=k, replace=False)
    return frozenset(pool[i] for i in idx)


def random_separated_pair(space: Space, seed) -> tuple:
    """``(A, B)`` with ``diameter(B) < dist(A, B)``.

    ``B`` lies in a non-root ball ``C``; ``A`` lies outside ``C``, either in
    ``C``'s parent or anywhere in the complement.
    """
    rng = _rng(seed)
    tree = ball_tree(space)
    proper = [(node, parent) for node, parent in tree.walk() if parent is not None]
    if not proper:
        raise NoProperBall("a single-point space has no proper ball")
    C, parent = proper[int(rng.integers(len(proper)))]
    B = random_subset(rng, C.members)
    outside = (parent.members if rng.random() < 0.5 else space.points) - C.members
    A = random_subset(rng, outside)
    return A, B


def random_pair(space: Space, seed) -> tuple:
    """Two independent random nonempty subsets (they may overlap)."""
    rng = _rng(seed)
    return random_subset(rng, space.points), random_subset(rng, space.points)


def random_nonseparated_pair(space: Space, seed, attempts=64, disjoint=False) -> tuple:
    """A pair with ``diameter(B) > dist(A, B)`` by rejection sampling."""
    rng = _rng(seed)
    if len(space) < 2:
        raise NoProperBall("every pair in a single-point space is separated")
    for _ in range(attempts):
        if disjoint:
            B = random_subset(rng, space.points)
            rest = space.points - B
            if not rest:
                continue
            A = random_subset(rng, rest)
        else:
            A, B = random_pair(space, rng)
        if not check_separation(space, A, B):
            return A, B
    raise GenerationExhausted(f"no non-separated pair in {attempts} attempts")


class _MapSampler:
    """Top-down sampler of ball-tree-respecting noncyclic maps on ``A u B``.

    With probability ``bias`` a child is sent to one of the largest
    admissible balls, which favours permutation-like maps over collapses.
    """

    def __init__(self, space, A, B, strict, bias=0.6):
        self.bias = bias
        self.A = A
        self.B = B
        self.strict = strict
        tree = ball_tree(subspace(space, A | B))
        self.nodes = tree.nodes()
        pos = {id(node): i for i, node in enumerate(self.nodes)}
        self.children = [[pos[id(c)] for c in node.children] for node in self.nodes]
        self.desc = [None] * len(self.nodes)
        for i in reversed(range(len(self.nodes))):
            self.desc[i] = [i] + [d for c in self.children[i] for d in self.desc[c]]
        self.memo = {}

    def allowed(self, x):
        if x in self.A and x in self.B:
            return self.A & self.B
        return self.A if x in self.A else self.B

    def fits(self, c, t):
        dc, dt = self.nodes[c].diam, self.nodes[t].diam
        if not self.children[c]:
            return not self.children[t]
        return dt < dc if self.strict else dt <= dc

    def feasible(self, c, t):
        key = (c, t)
        if key not in self.memo:
            if not self.children[c]:
                (x,) = self.nodes[c].members
                (y,) = self.nodes[t].members
                ok = y in self.allowed(x)
            else:
                ok = all(self.candidates(k, t) for k in self.children[c])
            self.memo[key] = ok
        return self.memo[key]

    def candidates(self, c, t):
        return [u for u in self.desc[t] if self.fits(c, u) and self.feasible(c, u)]

    def sample(self, rng):
        roots = self.candidates(0, 0)
        if not roots:
            return None
        table = {}

        def assign(c, t):
            if not self.children[c]:
                (x,) = self.nodes[c].members
                (y,) = self.nodes[t].members
                table[x] = y
                return
            for k in self.children[c]:
                opts = self.candidates(k, t)
                if rng.random() < self.bias:
                    top = max(self.nodes[u].diam for u in opts)
                    opts = [u for u in opts if self.nodes[u].diam == top]
                assign(k, opts[int(rng.integers(len(opts)))])

        assign(0, roots[int(rng.integers(len(roots)))])
        return SelfMap.from_dict(table)


def random_noncyclic_nonexpansive_map(space: Space, A, B, seed, strict=False) -> SelfMap:
    """A random noncyclic map on ``A u B`` that is nonexpansive (or strictly contractive).

    Every such map has positive probability.  With ``strict=True`` and no
    strictly contractive noncyclic map in existence,
    :class:`GenerationExhausted` is raised.
    """
    A = _points(space, A)
    B = _points(space, B)
    F = _MapSampler(space, A, B, strict).sample(_rng(seed))
    if F is None:
        raise GenerationExhausted("no strictly contractive noncyclic map exists on this pair")
    return F


def enumerate_spaces(max_points, pool=(1, 2, 3)):
    """Every ultrametric matrix on ``1..max_points`` points with off-diagonal values in ``pool``."""
    pool = tuple(as_rat(v) for v in pool)
    for n in range(1, max_points + 1):
        labels = _labels(n)
        cells = list(combinations(range(n), 2))
        for values in product(pool, repeat=len(cells)):
            dist = [[Fraction(0)] * n for _ in range(n)]
            for (i, j), v in zip(cells, values):
                dist[i][j] = dist[j][i] = v
            if not find_violations(labels, dist):
                yield Space(labels, dist, _trusted=True)
