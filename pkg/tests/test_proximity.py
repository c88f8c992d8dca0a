from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from umx import gen
from umx.core import dist_set_set, sphere, closed_ball, validate_ultrametric
from umx.errors import EmptySetError, PreconditionFailed
from umx.proximity import (
    check_separation,
    corollary27_check,
    cross_distance_constant,
    lemma21_check,
    lemma23_identity,
    lemma24_check,
    nearest_points,
    proximity_sets,
    theorem25_report,
)

from strategies import seeds, spaces

F = Fraction


def one_point():
    return validate_ultrametric(["x"], [[0]])


def brute_proximity(space, A, B):
    """Independent enumeration of A0, B0 and the attaining pairs."""
    r = min(space.d(a, b) for a in A for b in B)
    pairs = sorted((a, b) for a in A for b in B if space.d(a, b) == r)
    return r, {a for a, _ in pairs}, {b for _, b in pairs}, pairs


def test_nearest_points(ex29):
    assert nearest_points(ex29.space, "a1", ex29.B) == {"b1", "b2"}
    s = one_point()
    assert nearest_points(s, "x", {"x"}) == {"x"}
    inst = gen.example22_truncation(3)
    assert nearest_points(inst.space, "5", inst.A) == {"6"}
    with pytest.raises(EmptySetError):
        nearest_points(s, "x", set())


def test_proximity_sets_four_point(ex29):
    rep = proximity_sets(ex29.space, ex29.A, ex29.B)
    assert rep.A0 == ex29.A and rep.B0 == ex29.B and rep.dist == 2
    assert rep.pairs == (("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2"))
    assert rep.separated


def test_proximity_sets_trivial():
    rep = proximity_sets(one_point(), {"x"}, {"x"})
    assert rep.A0 == rep.B0 == {"x"} and rep.dist == 0


def test_proximity_sets_harmonic():
    inst = gen.example22_truncation(3)
    rep = proximity_sets(inst.space, inst.A, inst.B)
    assert (rep.A0, rep.B0, rep.dist) == ({"6"}, {"5"}, F(1, 5))
    assert rep.pairs == (("6", "5"),)


def test_separation(ex29):
    assert check_separation(ex29.space, ex29.A, ex29.B)
    assert check_separation(ex29.space, ex29.A, {"b1"})
    inst = gen.example22_truncation(3)
    assert not check_separation(inst.space, inst.A, inst.B)


def test_separated_pair_keeps_all_of_B(ex29):
    assert lemma21_check(ex29.space, ex29.A, ex29.B) == {
        "applicable": True, "A0_nonempty": True, "B0_equals_B": True,
    }
    out = lemma21_check(ex29.space, ex29.A, {"b2"})
    assert out["applicable"] and out["B0_equals_B"]


def test_proximity_set_is_sphere_and_ball(ex29):
    out = lemma23_identity(ex29.space, ex29.A, ex29.B, "b1")
    assert out["lhs"] == out["sphere_rhs"] == out["ball_rhs"] == {"a1", "a2"}
    assert out["equal"]
    out = lemma23_identity(one_point(), {"x"}, {"x"}, "x")
    assert out["lhs"] == {"x"} and out["equal"]
    inst = gen.example22_truncation(3)
    with pytest.raises(PreconditionFailed):
        lemma23_identity(inst.space, inst.A, inst.B, "1")


def test_three_statements_examples(ex29):
    rep = theorem25_report(ex29.space, ex29.A, ex29.B)
    assert rep.stmt_i and rep.stmt_ii and rep.stmt_iii and rep.witness == "a1" and rep.equivalent
    inst = gen.example22_truncation(3)
    rep = theorem25_report(inst.space, inst.A, inst.B)
    assert not rep.stmt_i and not rep.stmt_ii and not rep.stmt_iii and rep.equivalent
    assert rep.checks["dist_A0_B0_equals_dist"] and not rep.checks["B0_equals_B"]
    rep = theorem25_report(one_point(), {"x"}, {"x"})
    assert rep.stmt_i and rep.stmt_ii and rep.stmt_iii


def test_proximity_set_is_a_ball(ex29):
    assert corollary27_check(ex29.space, ex29.A, ex29.B)
    assert corollary27_check(one_point(), {"x"}, {"x"})
    inst = gen.example22_truncation(2)
    with pytest.raises(PreconditionFailed):
        corollary27_check(inst.space, inst.A, inst.B)


@settings(max_examples=200, deadline=None)
@given(spaces(min_points=2), seeds)
def test_separated_pair_structure(space, seed):
    A, B = gen.random_separated_pair(space, seed)
    r, A0, B0, pairs = brute_proximity(space, A, B)
    rep = proximity_sets(space, A, B)
    assert (rep.dist, rep.A0, rep.B0, list(rep.pairs)) == (r, A0, B0, pairs)
    assert rep.separated and B0 == B and A0
    assert all(space.d(a, b) == r for a in A0 for b in B0)
    assert dist_set_set(space, A0, B0)[0] == r
    for b0 in B:
        assert A0 == sphere(space, b0, r, within=A) == closed_ball(space, b0, r, within=A)
    assert cross_distance_constant(space, A, B)
    assert lemma21_check(space, A, B)["B0_equals_B"]
    assert corollary27_check(space, A, B)
    assert theorem25_report(space, A, B).equivalent


@settings(max_examples=200, deadline=None)
@given(spaces(), seeds)
def test_arbitrary_pairs_equivalence(space, seed):
    A, B = gen.random_pair(space, seed)
    rep = proximity_sets(space, A, B)
    assert rep.pairs
    assert rep.separated == (brute_proximity(space, A, B)[0] >= max(space.d(x, y) for x in B for y in B))
    assert theorem25_report(space, A, B).equivalent


@settings(max_examples=100, deadline=None)
@given(spaces())
def test_outside_points_equidistant_from_balls(space):
    assert lemma24_check(space) is None


def test_equidistance_check_flags_non_balls(ex29):
    assert lemma24_check(ex29.space, balls=[frozenset({"a1", "b1"})]) == (frozenset({"a1", "b1"}), "a2")


@pytest.mark.parametrize("N", range(2, 12))
def test_harmonic_gap_shrinks(N):
    inst = gen.example22_truncation(N)
    rep = proximity_sets(inst.space, inst.A, inst.B)
    assert rep.dist == F(1, 2 * N - 1)
    assert rep.pairs == ((str(2 * N), str(2 * N - 1)),)
