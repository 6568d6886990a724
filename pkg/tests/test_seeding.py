import numpy as np
import pytest

from exhull import PointSet, ReferenceSet, Tolerances, UsageError
from exhull.core import ARGMAX, sign_pattern, transform_centered
from exhull.oracle import classify_all_bruteforce
from exhull.seeding import argmax_direction, axis_extremes, establish_simplex, nearest_hyperplane

from conftest import ids

E_AXIS = set(ids(1, 2, 3, 4))


@pytest.mark.parametrize(
    "v, label",
    [((-1, 0), 1), ((1, 0), 2), ((0, -1), 3), ((0, 1), 4), ((30, 12), 9)],
)
def test_argmax_examples(nine, v, label):
    winner, unique = argmax_direction(nine, v)
    assert winner + 1 == label and unique


def test_argmax_scale_invariant(nine):
    rng = np.random.default_rng(3)
    for _ in range(50):
        v = rng.standard_normal(2)
        assert argmax_direction(nine, v)[0] == argmax_direction(nine, 7.5 * v)[0]


def test_argmax_zero_direction(nine):
    with pytest.raises(UsageError):
        argmax_direction(nine, (0, 0))


def test_argmax_tie_lowest_index():
    ps = PointSet([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert argmax_direction(ps, (1, 0)) == (1, False)


def test_axis_extremes(nine):
    state = axis_extremes(nine)
    assert state.e_prime == E_AXIS
    assert len(state.log) == 4 and all(p.unique for p in state.log)


def test_axis_extremes_single_point():
    assert axis_extremes(PointSet([[3.0, -1.0, 2.0]])).e_prime == {0}


def test_axis_extremes_tied_square():
    # square plus a point inside its bottom edge: every axis direction ties
    ps = PointSet([[0, 0], [1, 0], [0, 1], [1, 1], [0.5, 0]])
    state = axis_extremes(ps)
    assert state.e_prime == set()
    assert not any(p.unique for p in state.log)
    assert 4 not in classify_all_bruteforce(ps)


def test_nearest_hyperplane_x8(nine):
    r = nearest_hyperplane(nine, 7, E_AXIS)
    assert r.members == ids(1, 2)


def test_nearest_hyperplane_x7(nine):
    r = nearest_hyperplane(nine, 6, E_AXIS)
    assert set(r.members) == set(ids(1, 4))


def test_nearest_hyperplane_keeps_zero_component(nine):
    # seen from x_8, x_3 = (0, -37): its pattern (0, -1) differs from x_1's (-1, -1)
    assert tuple(sign_pattern(transform_centered(nine, 7, [2])[0])) == (0, -1)
    r = nearest_hyperplane(nine, 7, ids(1, 3))
    assert r.members == ids(1, 3)


def test_nearest_hyperplane_single(nine):
    assert nearest_hyperplane(nine, 7, [3]).members == [3]


def test_nearest_hyperplane_errors(nine):
    with pytest.raises(UsageError):
        nearest_hyperplane(nine, 7, [])
    with pytest.raises(UsageError):
        nearest_hyperplane(nine, 0, E_AXIS)


def test_nearest_hyperplane_patterns_distinct():
    rng = np.random.default_rng(11)
    for m in (2, 3, 5):
        ps = PointSet(rng.standard_normal((60, m)))
        e = axis_extremes(ps).e_prime
        for l in set(range(ps.n)) - e:
            r = nearest_hyperplane(ps, l, e)
            pats = {tuple(sign_pattern(x)) for x in transform_centered(ps, l, r.members)}
            assert len(pats) == len(r) <= m


def test_establish_simplex_x8(nine):
    r = establish_simplex(nine, 7, nearest_hyperplane(nine, 7, E_AXIS))
    assert r.members == ids(1, 2, 4)
    assert r.refinements == 0
    assert r.origin[3] == ARGMAX


def test_establish_simplex_x7_refines_twice(nine):
    r0 = nearest_hyperplane(nine, 6, E_AXIS)
    # v_0 = -(mean of x_1^7, x_4^7) = (6, 15) picks x_4 again
    v0 = -transform_centered(nine, 6, r0.members).mean(axis=0)
    assert v0.tolist() == [6.0, 15.0]
    assert argmax_direction(nine, v0)[0] == 3
    # v_1 = -(1/3 x_1^7 + 2/3 x_4^7) = (0, 20/3) picks x_4 once more
    v1 = -(transform_centered(nine, 6, ids(1))[0] / 3 + 2 * transform_centered(nine, 6, ids(4))[0] / 3)
    assert np.allclose(v1, [0, 20 / 3])
    assert argmax_direction(nine, v1)[0] == 3
    # v_2 = -(1/4 x_1^7 + 3/4 x_4^7) = (-3, 2.5) finds x_5
    v2 = -(transform_centered(nine, 6, ids(1))[0] / 4 + 3 * transform_centered(nine, 6, ids(4))[0] / 4)
    assert v2.tolist() == [-3.0, 2.5]
    assert argmax_direction(nine, v2)[0] == 4

    r = establish_simplex(nine, 6, r0)
    assert set(r.members) == set(ids(1, 4, 5))
    assert r.refinements == 2


def test_establish_simplex_refinement_cap(nine):
    r0 = nearest_hyperplane(nine, 6, E_AXIS)
    r = establish_simplex(nine, 6, r0, Tolerances(max_refine=1))
    assert r.refinements == 1
    assert set(r.members) == set(ids(1, 4))


def test_establish_simplex_x6(nine):
    e = set(ids(1, 2, 3, 4, 5, 9))
    r = establish_simplex(nine, 5, nearest_hyperplane(nine, 5, e))
    assert set(r.members) == set(ids(2, 9, 3))


def test_establish_simplex_sizes():
    rng = np.random.default_rng(5)
    for m in (2, 4, 6):
        ps = PointSet(rng.standard_normal((80, m)))
        tol = Tolerances().resolve(ps)
        e = axis_extremes(ps).e_prime
        for l in sorted(set(range(ps.n)) - e)[:20]:
            r0 = nearest_hyperplane(ps, l, e, tol)
            r = establish_simplex(ps, l, r0, tol)
            assert len(r) in (len(r0), len(r0) + 1)
            assert len(r) <= m + 1
            assert r.refinements <= tol.max_refine
            assert r.members[: len(r0)] == r0.members


def test_establish_simplex_needs_members(nine):
    with pytest.raises(UsageError):
        establish_simplex(nine, 7, ReferenceSet(owner=7))


def test_new_points_are_extreme():
    rng = np.random.default_rng(8)
    ps = PointSet(rng.standard_normal((40, 3)))
    truth = classify_all_bruteforce(ps)
    e = axis_extremes(ps).e_prime
    assert e <= truth
    for l in set(range(ps.n)) - e:
        r = establish_simplex(ps, l, nearest_hyperplane(ps, l, e))
        for pid in r.members:
            if r.origin[pid] == ARGMAX:
                assert pid in truth
