from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from umx import gen
from umx.core import (
    ball_tree,
    closed_ball,
    diameter,
    dist_point_set,
    dist_set_set,
    find_violations,
    is_ball,
    open_ball,
    space_from_json,
    sphere,
    subspace,
    validate_ultrametric,
)
from umx.errors import EmptySetError, RatParseError, SpaceFormatError, UltrametricError, UnknownLabelError

from strategies import spaces

F = Fraction


def brute_closed_balls(space):
    out = set()
    for c in space.labels:
        for r in {F(0)} | {v for row in space.dist for v in row}:
            out.add(frozenset(y for y in space.labels if space.d(c, y) <= r))
    return out


def harmonic_dist(n, m):
    return F(0) if n == m else max(F(1, n), F(1, m))


# -- validation ------------------------------------------------------------


def test_four_point_example_validates(ex29):
    s = ex29.space
    assert s.d("a1", "a2") == s.d("b1", "b2") == 1
    assert all(s.d(a, b) == 2 for a in ex29.A for b in ex29.B)


def test_single_point():
    s = validate_ultrametric(["x"], [[F(0)]])
    assert len(s) == 1


def test_broken_triangle_reports_witness():
    with pytest.raises(UltrametricError) as info:
        validate_ultrametric(["x", "y", "z"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    kinds = [(v.kind, v.points) for v in info.value.violations]
    assert ("StrongTriangleFailure", ("x", "z", "y")) in kinds


def test_all_violations_reported():
    m = [[1, 0, 2], [0, 0, 5], [3, 5, 0]]
    got = {(v.kind, v.points) for v in find_violations(["x", "y", "z"], m)}
    assert ("NonzeroSelfDistance", ("x",)) in got
    assert ("ZeroOffDiagonal", ("x", "y")) in got
    assert ("Asymmetry", ("x", "z")) in got
    assert ("StrongTriangleFailure", ("y", "z", "x")) in got


def test_shape_errors():
    with pytest.raises(SpaceFormatError):
        validate_ultrametric(["x", "y"], [[0]])
    with pytest.raises(SpaceFormatError):
        validate_ultrametric(["x", "x"], [[0, 1], [1, 0]])


def test_json_rejects_non_canonical():
    with pytest.raises(RatParseError, match="non-canonical"):
        space_from_json({"points": ["a", "b"], "dist": [["0", "2/4"], ["2/4", "0"]]})


def test_json_roundtrip(ex29):
    assert space_from_json(ex29.space.to_json()) == ex29.space


# -- distances -------------------------------------------------------------


def test_point_set_distances(ex29):
    s = ex29.space
    assert dist_point_set(s, "a1", ex29.B) == 2
    assert dist_point_set(s, "a1", {"a1"}) == 0
    assert dist_set_set(s, ex29.A, ex29.B)[0] == 2
    assert dist_set_set(s, ex29.A, ex29.A)[0] == 0
    assert diameter(s, ex29.B) == 1
    assert diameter(s, {"b1"}) == 0


def test_empty_and_unknown(ex29):
    with pytest.raises(EmptySetError):
        dist_point_set(ex29.space, "a1", set())
    with pytest.raises(EmptySetError):
        diameter(ex29.space, [])
    with pytest.raises(UnknownLabelError):
        dist_point_set(ex29.space, "zz", ex29.A)


def test_harmonic_truncation_against_enumeration():
    inst = gen.example22_truncation(3)
    evens, odds = [2, 4, 6], [1, 3, 5]
    assert dist_point_set(inst.space, "1", inst.A) == min(harmonic_dist(1, m) for m in evens) == 1
    oracle = min((harmonic_dist(a, b), (a, b)) for a, b in product(evens, odds))
    assert oracle == (F(1, 5), (6, 5))
    value, pair = dist_set_set(inst.space, inst.A, inst.B)
    assert value == F(1, 5) and pair == ("6", "5")


@pytest.mark.parametrize("N", [2, 5, 9])
def test_harmonic_diameters(N):
    inst = gen.example22_truncation(N)
    assert diameter(inst.space, inst.B) == 1
    assert diameter(inst.space, inst.A) == F(1, 2)


def test_harmonic_closed_form_is_max_form():
    inst = gen.example22_truncation(6)
    for x in inst.space.labels:
        for y in inst.space.labels:
            assert inst.space.d(x, y) == harmonic_dist(int(x), int(y))


# -- balls -----------------------------------------------------------------


def test_balls_and_spheres(ex29):
    s = ex29.space
    assert closed_ball(s, "b1", 1) == {"b1", "b2"}
    assert closed_ball(s, "b1", 0) == {"b1"}
    assert sphere(s, "b1", 2) == {"a1", "a2"}
    assert open_ball(s, "b1", 2) == {"b1", "b2"}
    assert closed_ball(s, "b1", F(3, 2), within=ex29.A) == frozenset()


def test_is_ball(ex29):
    s = ex29.space
    assert is_ball(s, {"b1", "b2"}) == ("b1", 1)
    assert is_ball(s, {"a2"}) == ("a2", 0)
    assert is_ball(s, {"a1", "b1"}) is None
    assert is_ball(s, {"a1", "b1"}, within={"a1", "b1"}) == ("a1", 2)


def test_ball_tree_four_point(ex29):
    root = ball_tree(ex29.space)
    assert root.members == {"a1", "a2", "b1", "b2"} and root.diam == 2
    kids = [(c.members, c.diam) for c in root.children]
    assert kids == [(frozenset({"a1", "a2"}), 1), (frozenset({"b1", "b2"}), 1)]
    for c in root.children:
        assert all(leaf.is_leaf and leaf.diam == 0 and len(leaf.members) == 1 for leaf in c.children)


def test_ball_tree_single_point():
    root = ball_tree(validate_ultrametric(["x"], [[0]]))
    assert root.is_leaf and root.members == {"x"}


def test_ball_tree_harmonic_chain():
    root = ball_tree(gen.example22_truncation(2).space)
    chain = []
    node = root
    while not node.is_leaf:
        chain.append((sorted(node.members), node.diam))
        node = max(node.children, key=lambda c: len(c.members))
    assert chain == [(["1", "2", "3", "4"], 1), (["2", "3", "4"], F(1, 2)), (["3", "4"], F(1, 3))]


# -- invariants on generated spaces -----------------------------------------


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_isosceles_and_strong_triangle(space):
    L = space.labels
    for x in L:
        for y in L:
            for z in L:
                assert space.d(x, y) <= max(space.d(x, z), space.d(z, y))
                a, b, c = sorted([space.d(x, y), space.d(y, z), space.d(x, z)])
                assert b == c


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_ball_laminarity_center_invariance_and_diameter(space):
    balls = brute_closed_balls(space)
    for P in balls:
        for Q in balls:
            assert not (P & Q) or P <= Q or Q <= P
    for c in space.labels:
        for r in space.levels:
            ball = closed_ball(space, c, r)
            assert diameter(space, ball) <= r
            for c2 in ball:
                assert closed_ball(space, c2, r) == ball


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_outside_points_are_equidistant(space):
    for ball in brute_closed_balls(space):
        for x in space.points - ball:
            assert len({space.d(x, m) for m in ball}) == 1


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_ball_tree_invariants(space):
    root = ball_tree(space)
    nodes = root.nodes()
    assert len(nodes) <= 2 * len(space) - 1
    assert {n.members for n in nodes} == brute_closed_balls(space)
    assert len({n.members for n in nodes}) == len(nodes)
    for node in nodes:
        if node.is_leaf:
            assert len(node.members) == 1 and node.diam == 0
            continue
        union = frozenset().union(*(c.members for c in node.children))
        assert union == node.members
        assert sum(len(c.members) for c in node.children) == len(node.members)
        for c in node.children:
            assert c.diam < node.diam
        for c1 in node.children:
            for c2 in node.children:
                if c1 is not c2:
                    assert all(space.d(x, y) == node.diam for x in c1.members for y in c2.members)


@settings(max_examples=60, deadline=None)
@given(spaces(min_points=2))
def test_subspace_keeps_distances(space):
    keep = space.labels[::2]
    sub = subspace(space, keep)
    assert sub.labels == tuple(keep)
    assert all(sub.d(x, y) == space.d(x, y) for x in keep for y in keep)
