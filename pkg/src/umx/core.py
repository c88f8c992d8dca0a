"""Finite ultrametric spaces with exact distances.

A :class:`Space` is immutable.  Point sets are plain ``frozenset`` objects
of labels; every function that takes a point set also takes the owning
space and checks that the labels resolve.  Orderings exposed to callers
(pairs, witnesses, members) are label-lexicographic.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional

from . import kernels
from .errors import EmptySetError, SpaceFormatError, UltrametricError, UnknownLabelError
from .rat import as_rat, format_rat, parse_rat

PointSet = frozenset


@dataclass(frozen=True)
class Violation:
    kind: str
    points: tuple

    def __str__(self):
        return f"{self.kind}({', '.join(self.points)})"

    def to_json(self):
        return {"kind": self.kind, "points": list(self.points)}


class Space:
    """A finite ultrametric space; construct through :func:`validate_ultrametric`."""

    def __init__(self, labels, dist, *, _trusted=False):
        labels = tuple(labels)
        dist = tuple(tuple(row) for row in dist)
        if not _trusted:
            _check_shape(labels, dist)
            dist = tuple(tuple(as_rat(v) for v in row) for row in dist)
            violations = _violations(labels, dist)
            if violations:
                raise UltrametricError(violations)
        self.labels = labels
        self.dist = dist
        self.index = {x: i for i, x in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return isinstance(other, Space) and self.labels == other.labels and self.dist == other.dist

    def __hash__(self):
        return hash((self.labels, self.dist))

    def __repr__(self):
        return f"Space({list(self.labels)!r})"

    def d(self, x, y) -> Fraction:
        return self.dist[self.idx(x)][self.idx(y)]

    def idx(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownLabelError(x) from None

    @property
    def points(self) -> frozenset:
        return frozenset(self.labels)

    @cached_property
    def levels(self) -> tuple:
        """Sorted distinct distance values, including 0."""
        return tuple(sorted({v for row in self.dist for v in row}))

    @cached_property
    def rank(self) -> array:
        """Flat row-major dense ranks of the distances, for the kernels."""
        code = {v: i for i, v in enumerate(self.levels)}
        return array("q", [code[v] for row in self.dist for v in row])

    def to_json(self) -> dict:
        return {
            "points": list(self.labels),
            "dist": [[format_rat(v) for v in row] for row in self.dist],
        }


def _check_shape(labels, dist):
    if len(set(labels)) != len(labels):
        raise SpaceFormatError("point labels must be distinct")
    if not all(isinstance(x, str) for x in labels):
        raise SpaceFormatError("point labels must be strings")
    if len(dist) != len(labels) or any(len(row) != len(labels) for row in dist):
        raise SpaceFormatError(
            f"distance matrix must be {len(labels)}x{len(labels)} to match the labels"
        )


def _violations(labels, dist) -> list:
    n = len(labels)
    out = []
    for i in range(n):
        if dist[i][i] != 0:
            out.append(Violation("NonzeroSelfDistance", (labels[i],)))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                out.append(Violation("Asymmetry", (labels[i], labels[j])))
            if dist[i][j] == 0 or dist[j][i] == 0:
                out.append(Violation("ZeroOffDiagonal", (labels[i], labels[j])))
    levels = sorted({v for row in dist for v in row})
    code = {v: k for k, v in enumerate(levels)}
    rank = array("q", [code[v] for row in dist for v in row])
    for i, j, k in kernels.triangle_failures(rank, n):
        out.append(Violation("StrongTriangleFailure", (labels[i], labels[j], labels[k])))
    return out


def find_violations(labels, matrix) -> list:
    """Every violated axiom of ``matrix``; empty iff it is an ultrametric."""
    labels = tuple(labels)
    _check_shape(labels, matrix)
    dist = tuple(tuple(as_rat(v) for v in row) for row in matrix)
    return _violations(labels, dist)


def validate_ultrametric(labels, matrix) -> Space:
    """Return a validated :class:`Space` or raise :class:`UltrametricError`.

    The error carries the complete violation list, not just the first.
    """
    return Space(labels, matrix)


def subspace(space: Space, members) -> Space:
    """The restriction of ``space`` to ``members``, keeping label order."""
    keep = _points(space, members)
    idx = [i for i, x in enumerate(space.labels) if x in keep]
    return Space(
        [space.labels[i] for i in idx],
        [[space.dist[i][j] for j in idx] for i in idx],
        _trusted=True,
    )


def _points(space: Space, members, nonempty=True) -> frozenset:
    s = frozenset(members)
    for x in s:
        if x not in space.index:
            raise UnknownLabelError(x)
    if nonempty and not s:
        raise EmptySetError("point set must be nonempty")
    return s


def dist_point_set(space: Space, x, A) -> Fraction:
    """``dist(x, A)``; on a finite set the infimum is a minimum."""
    A = _points(space, A)
    row = space.dist[space.idx(x)]
    return min(row[space.index[z]] for z in A)


def dist_set_set(space: Space, A, B):
    """``(dist(A, B), (a, b))`` with the lexicographically least attaining pair."""
    A = _points(space, A)
    B = _points(space, B)
    best = None
    for a in sorted(A):
        row = space.dist[space.index[a]]
        for b in sorted(B):
            v = row[space.index[b]]
            if best is None or v < best[0]:
                best = (v, (a, b))
    return best


def diameter(space: Space, A) -> Fraction:
    A = sorted(_points(space, A))
    idx = [space.index[x] for x in A]
    return max(space.dist[i][j] for i in idx for j in idx)


def _scan(space, c, within):
    row = space.dist[space.idx(c)]
    pts = space.labels if within is None else _points(space, within, nonempty=False)
    return ((y, row[space.index[y]]) for y in pts)


def closed_ball(space: Space, c, r, within=None) -> frozenset:
    """``{y : d(c, y) <= r}``, optionally intersected with ``within``."""
    r = as_rat(r)
    return frozenset(y for y, v in _scan(space, c, within) if v <= r)


def open_ball(space: Space, c, r, within=None) -> frozenset:
    r = as_rat(r)
    return frozenset(y for y, v in _scan(space, c, within) if v < r)


def sphere(space: Space, c, r, within=None) -> frozenset:
    r = as_rat(r)
    return frozenset(y for y, v in _scan(space, c, within) if v == r)


@dataclass(frozen=True)
class BallNode:
    """One closed ball of the space; children are the classes of ``d < diam``."""

    members: frozenset
    diam: Fraction
    children: tuple = field(default=())

    @property
    def is_leaf(self):
        return not self.children

    def walk(self, parent=None) -> Iterator:
        """Preorder ``(node, parent)`` pairs; the root's parent is ``None``."""
        yield self, parent
        for child in self.children:
            yield from child.walk(self)

    def nodes(self) -> list:
        return [node for node, _ in self.walk()]

    def to_json(self) -> dict:
        return {
            "members": sorted(self.members),
            "diam": format_rat(self.diam),
            "children": [c.to_json() for c in self.children],
        }


def ball_tree(space: Space) -> BallNode:
    """The canonical dendrogram: every distinct closed ball exactly once."""

    def build(members):
        pts = sorted(members, key=space.index.__getitem__)
        idx = [space.index[x] for x in pts]
        diam = max(space.dist[i][j] for i in idx for j in idx)
        if diam == 0:
            return BallNode(frozenset(members), diam)
        remaining = list(pts)
        classes = []
        while remaining:
            row = space.dist[space.index[remaining[0]]]
            cls = [y for y in remaining if row[space.index[y]] < diam]
            classes.append(frozenset(cls))
            remaining = [y for y in remaining if y not in cls]
        classes.sort(key=min)
        return BallNode(frozenset(members), diam, tuple(build(c) for c in classes))

    if not len(space):
        raise EmptySetError("empty space has no ball tree")
    return build(space.points)


def is_ball(space: Space, S, within=None) -> Optional[tuple]:
    """``(center, radius)`` if ``S`` is a closed ball, else ``None``.

    With ``within`` the question is whether ``S`` is a closed ball of that
    subspace.  The center is the least label (any member is a center) and
    the radius is the smallest one that works, i.e. ``diameter(S)``.
    """
    S = _points(space, S)
    if within is not None:
        within = _points(space, within)
        if not S <= within:
            return None
    c = min(S)
    r = diameter(space, S)
    if closed_ball(space, c, r, within) == S:
        return c, r
    return None


def all_closed_balls(space: Space) -> set:
    """Brute force: every ``closed_ball(c, r)`` with ``r`` an occurring distance."""
    return {closed_ball(space, c, r) for c in space.labels for r in space.levels}


# -- JSON ------------------------------------------------------------------


def space_from_json(doc) -> Space:
    if not isinstance(doc, dict) or "points" not in doc or "dist" not in doc:
        raise SpaceFormatError('space document needs "points" and "dist" keys')
    labels = doc["points"]
    rows = doc["dist"]
    if not isinstance(labels, list) or not isinstance(rows, list):
        raise SpaceFormatError('"points" and "dist" must be arrays')
    if any(not isinstance(row, list) for row in rows):
        raise SpaceFormatError('"dist" must be an array of arrays')
    matrix = [[parse_rat(v) for v in row] for row in rows]
    return validate_ultrametric(labels, matrix)


def load_space(path) -> Space:
    with open(path, encoding="utf-8") as fh:
        return space_from_json(json.load(fh))
