import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricvortex import exact_lattice as el
from toricvortex import toric_geometry as tg
from toricvortex import vortex_invariants as vi
from toricvortex.errors import (AlgorithmMismatch, NegativeExpectedDimension, SingularParameter)
from toricvortex.poly_residue import MultiPoly, satisfies_dimension

from randsys import monomials, random_lambda, random_regular_tau, random_system
from systems import CP1, CP2, THREEFOLD, THREEFOLD_TAU

# weights (1,0),(0,1),(1,1): the smallest system where no partition is
# admissible for a class with a nonzero invariant
TRIANGLE = tg.WeightSystem.from_weights([(1, 0), (0, 1), (1, 1)])


# ---------------------------------------------------------------------------
# fixed values


def test_projective_plane_point_class():
    assert vi.invariant_direct(CP2, (1,), (0,), vi.ClassCombo.monomial((2, 0, 0))) == 1
    assert vi.invariant_wallcross(CP2, (1,), (0,), vi.ClassCombo.monomial((1, 1, 0))) == 1


def test_projective_line_degree_one():
    # the moduli space is CP^3 and the class is its point class
    assert vi.invariant_direct(CP1, (1,), (1,), vi.ClassCombo.monomial((3, 0))) == 1


def test_negative_parameter_gives_zero():
    assert vi.invariant_direct(CP2, (-1,), (0,), vi.ClassCombo.monomial((2, 0, 0))) == 0


def test_wrong_degree_gives_zero():
    assert vi.invariant_direct(CP2, (1,), (0,), vi.ClassCombo.monomial((1, 0, 0))) == 0


def test_empty_partition_set_with_nonzero_invariant():
    lam, ell, tau = (1, 0), (0, 3, 0), (2, 1)
    assert vi.partitions(TRIANGLE, lam, ell) == []
    alpha = vi.ClassCombo.monomial(ell)
    assert vi.invariant_direct(TRIANGLE, tau, lam, alpha) == -2
    assert vi.invariant_wallcross(TRIANGLE, tau, lam, alpha) == -2
    for seed in range(5):
        assert vi.invariant_wallcross(TRIANGLE, tau, lam, alpha, seed=seed) == -2
    # the partition-based vanishing rule misses it
    assert vi.invariant_direct(TRIANGLE, tau, lam, alpha, vanishing="partition") == 0


def test_threefold_small_table():
    ev = vi.DirectEvaluator(THREEFOLD, THREEFOLD_TAU, (0, 0))
    wc = vi.WallCrossEngine(THREEFOLD, THREEFOLD_TAU, (0, 0))
    values = {ell: ev.monomial(ell) for ell in monomials(5, 3)}
    assert all(values[ell] == wc.monomial(ell) for ell in values)
    # u1 u2 = 0 classically
    assert values[(1, 1, 1, 0, 0)] == 0
    assert values[(0, 0, 1, 1, 1)] == 0
    assert values[(1, 0, 1, 1, 0)] == 1


def test_rank1_genus():
    assert vi.rank1_genus_invariant((1, 2), 1, 2) == Fraction(9, 2)
    assert vi.rank1_genus_invariant((1, 1), 0, 0) == 1
    assert vi.rank1_genus_invariant((1, 1), 1, 0, tau=-1) == 0
    with pytest.raises(NegativeExpectedDimension):
        vi.rank1_genus_invariant((1, 1), 0, 3)
    with pytest.raises(SingularParameter):
        vi.rank1_genus_invariant((1, 1), 0, 0, tau=0)


def test_singular_parameter_rejected():
    with pytest.raises(SingularParameter):
        vi.DirectEvaluator(THREEFOLD, (1, 1), (0, 0))


def test_checked_mode_and_debug():
    alpha = vi.ClassCombo.monomial((0, 3, 0))
    assert vi.invariant(TRIANGLE, (2, 1), (1, 0), alpha, mode="checked") == -2
    assert vi.invariant_direct(TRIANGLE, (2, 1), (1, 0), alpha, debug=True) == -2
    with pytest.raises(ValueError):
        vi.invariant(TRIANGLE, (2, 1), (1, 0), alpha, mode="fast")


def test_bounded_cache_matches_unbounded():
    rng = random.Random(11)
    for _ in range(10):
        W = random_system(rng)
        tau = random_regular_tau(rng, W)
        lam = random_lambda(rng, W)
        m = W.expected_dimension(lam)
        if m > 5:
            continue
        a = vi.DirectEvaluator(W, tau, lam)
        b = vi.DirectEvaluator(W, tau, lam, cache_size=4)
        assert all(a.monomial(e) == b.monomial(e) for e in monomials(W.n, m))


# ---------------------------------------------------------------------------
# partitions and helpers


def test_dimension_partitions_are_valid_and_sorted():
    rng = random.Random(1)
    for _ in range(30):
        W = random_system(rng)
        parts = vi.dimension_partitions(W)
        assert all(satisfies_dimension(W, p) for p in parts)
        assert list(parts) == sorted(parts)
        assert len(set(parts)) == len(parts)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(st.integers(-6, 6), min_size=6, max_size=6))
def test_shift_multiplier_is_minimal(seed, dvals):
    W = random_system(random.Random(seed))
    d = dvals[:W.n] + [0] * max(0, W.n - len(dvals))
    c = vi.shift_multiplier(W, d)
    zeta = W.properness_witness
    ok = lambda c: all(dd + c * el.dot(w, zeta) >= -1 for w, dd in zip(W.weights, d))
    assert ok(c) and (c == 0 or not ok(c - 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_poly_combo_round_trip(seed):
    rng = random.Random(seed)
    W = random_system(rng)
    deg = rng.randint(0, 3)
    p = MultiPoly(W.k)
    for e in monomials(W.k, deg):
        p = p + MultiPoly.monomial(e, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    assert vi.poly_to_combo(W, p).to_poly(W) == p


# ---------------------------------------------------------------------------
# the two algorithms and the invariance properties


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_direct_equals_wallcross(seed):
    rng = random.Random(seed)
    W = random_system(rng)
    tau = random_regular_tau(rng, W, inside=rng.random() < 0.8)
    lam = random_lambda(rng, W)
    m = W.expected_dimension(lam)
    if m > 5:
        return
    a = vi.DirectEvaluator(W, tau, lam)
    b = vi.WallCrossEngine(W, tau, lam, seed=seed)
    for ell in monomials(W.n, m):
        assert a.monomial(ell) == b.monomial(ell)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_path_seed_does_not_matter(seed):
    rng = random.Random(seed)
    W = random_system(rng)
    tau = random_regular_tau(rng, W)
    lam = random_lambda(rng, W)
    m = W.expected_dimension(lam)
    if m > 4:
        return
    a = vi.WallCrossEngine(W, tau, lam, seed=0)
    b = vi.WallCrossEngine(W, tau, lam, seed=seed + 1)
    assert all(a.monomial(e) == b.monomial(e) for e in monomials(W.n, m))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_vanishing_outside_pole_cone(seed):
    rng = random.Random(seed)
    W = random_system(rng)
    tau = random_regular_tau(rng, W, inside=rng.random() < 0.5)
    lam = random_lambda(rng, W)
    m = W.expected_dimension(lam)
    if m > 5:
        return
    d = W.degrees(lam)
    ev = vi.DirectEvaluator(W, tau, lam)
    for ell in monomials(W.n, m):
        J = [nu for nu in range(W.n) if ell[nu] <= d[nu]]
        if not tg.cone_contains(W, J, tau)[0]:
            assert ev.monomial(ell) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_wall_identity_both_orientations(seed):
    rng = random.Random(seed)
    W = random_system(rng, kmax=2)
    lam = random_lambda(rng, W)
    m = W.expected_dimension(lam)
    if m > 4:
        return
    ells = list(monomials(W.n, m))
    for wall in tg.enumerate_walls(W):
        ell = rng.choice(ells)
        alpha = vi.ClassCombo.monomial(ell)
        r = vi.wallcross_check(W, wall, lam, alpha, seed=seed)
        flipped = vi.wallcross_check(W, wall, lam, alpha, tau0=r.tau0,
                                     tau1=tuple(-x for x in wall.normal))
        assert r.passed and flipped.passed and flipped.flipped
