import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricvortex import exact_lattice as el
from toricvortex import toric_geometry as tg
from toricvortex.errors import (DegeneratePath, EmptyQuotient, InvalidWeightSystem, NoLift,
                                NotFree, NotProper, SingularParameter)

from randsys import random_regular_tau, random_system
from systems import CP1xCP1, CP2, THREEFOLD, THREEFOLD_TAU


# ---------------------------------------------------------------------------
# weight systems


def test_validation():
    with pytest.raises(InvalidWeightSystem):
        tg.WeightSystem.from_weights([(1, 0), (0, 0)])
    with pytest.raises(InvalidWeightSystem):
        tg.WeightSystem.from_weights([(1, 0), (2, 0)])
    with pytest.raises(NotProper):
        tg.WeightSystem.from_weights([(1,), (-1,)])
    with pytest.raises(InvalidWeightSystem):
        tg.WeightSystem(2, ((1, 0), (1,)))


def test_degrees_and_dimension():
    assert THREEFOLD.degrees((1, -1)) == (1, 0, -1, -1, -1)
    assert THREEFOLD.expected_dimension((0, 0)) == 3
    assert THREEFOLD.total_weight == (2, 4)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_properness_witness_is_positive(seed):
    W = random_system(random.Random(seed))
    assert all(el.dot(w, W.properness_witness) >= 1 for w in W.weights)


# ---------------------------------------------------------------------------
# regularity and chambers


def test_regularity():
    assert tg.is_regular(THREEFOLD, THREEFOLD_TAU)
    assert not tg.is_regular(THREEFOLD, (1, 1))   # on the ray of w_2
    assert not tg.is_regular(THREEFOLD, (0, 1))
    assert tg.is_regular(CP2, (1,)) and not tg.is_regular(CP2, (0,))


def test_threefold_fingerprint_and_walls():
    fp = tg.chamber_fingerprint(THREEFOLD, THREEFOLD_TAU)
    assert fp == frozenset({(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)})
    walls = tg.enumerate_walls(THREEFOLD)
    assert [w.indices for w in walls] == [(0,), (1,), (2, 3, 4)]
    for w in walls:
        assert all(el.dot(THREEFOLD.weights[i], w.normal) == 0 for i in w.indices)


def test_cone_certificate():
    ok, cert = tg.cone_contains(THREEFOLD, (0, 2), (2, 4))
    assert ok and cert == (2, 4)
    ok, cert = tg.cone_contains(THREEFOLD, (0, 2), (-1, 4))
    assert not ok and cert is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_paths_cross_only_walls(seed):
    rng = random.Random(seed)
    W = random_system(rng)
    b = random_regular_tau(rng, W)
    path = tg.find_path(W, tg.outside_point(W), b, seed=seed)
    for c in path.crossings:
        assert el.dot(c.tau0, c.wall.normal) == 0
        assert tg.generic_wall_point(W, c.wall, c.tau0)


def test_segments_between_crossings_are_regular():
    rng = random.Random(3)
    for _ in range(30):
        W = random_system(rng)
        b = random_regular_tau(rng, W)
        path = tg.find_path(W, tg.outside_point(W), b, seed=0)
        assert path.crossings
        ts = [Fraction(0)] + [c.t for c in path.crossings] + [Fraction(1)]
        mids = [tuple(a + (t0 + t1) / 2 * (e - a) for a, e in zip(path.start, path.end))
                for t0, t1 in zip(ts, ts[1:])]
        assert all(tg.is_regular(W, m) for m in mids)
        assert tg.chamber_fingerprint(W, mids[0]) == frozenset()
        assert tg.chamber_fingerprint(W, mids[-1]) == tg.chamber_fingerprint(W, b)


def test_outside_point_has_empty_quotient():
    p = tg.outside_point(THREEFOLD)
    assert tg.is_regular(THREEFOLD, p) and not tg.in_image(THREEFOLD, p)


# ---------------------------------------------------------------------------
# polytope, lattices, effective cone


def test_threefold_polytope():
    P = tg.moment_polytope(THREEFOLD, THREEFOLD_TAU)
    assert P.f_vector == (6, 9, 5, 1)
    assert set(P.vertices) == {(0, 2, 3), (0, 2, 4), (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4)}


def test_empty_polytope():
    with pytest.raises(EmptyQuotient):
        tg.moment_polytope(THREEFOLD, tg.outside_point(THREEFOLD))


def test_freeness_and_chern_number():
    assert tg.acts_freely(THREEFOLD, THREEFOLD_TAU)
    assert tg.minimal_chern_number(THREEFOLD) == 2
    assert tg.minimal_chern_number(CP2) == 3
    W = tg.WeightSystem.from_weights([(1,), (2,)])
    assert not tg.acts_freely(W, (1,))
    with pytest.raises(NotFree):
        tg.lambda_tau_sublattice(W, (1,))


def test_lift_degree_vector():
    assert tg.lift_degree_vector(THREEFOLD, THREEFOLD_TAU, (1, 0, -1, -1, -1)) == (1, -1)
    with pytest.raises(NoLift):
        tg.lift_degree_vector(THREEFOLD, THREEFOLD_TAU, (1, 0, 0, 0, 0))


def test_effective_cones():
    eff = tg.effective_cone(THREEFOLD, THREEFOLD_TAU)
    assert sorted(eff.eff_generators) == [(-1, 1), (1, 0)]
    assert eff.contains((0, 1)) and not eff.contains((0, -1))
    assert tg.effective_cone(CP1xCP1, (1, 1)).eff_generators == ((0, 1), (1, 0)) or \
        sorted(tg.effective_cone(CP1xCP1, (1, 1)).eff_generators) == [(0, 1), (1, 0)]


def test_wall_reduction_basis():
    wall = tg.enumerate_walls(THREEFOLD)[2]
    red = tg.wall_reduction(THREEFOLD, wall, (0, 1), (0, 1), wall.normal)
    assert red.system.k == 1 and red.system.n == 3
    assert el.determinant(red.basis) == 1
    assert red.e1 == wall.normal


def test_singular_tau_rejected():
    with pytest.raises(SingularParameter):
        tg.lambda_tau_sublattice(THREEFOLD, (1, 1))
