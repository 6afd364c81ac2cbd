"""Genus-zero vortex invariants by monomial rewriting and by wall crossing.

Two independent evaluators are provided:

* :class:`DirectEvaluator` reduces every monomial ``w^l`` to base cases
  ``1/|det(w_J)|`` by substituting one linear relation at a time.
* :class:`WallCrossEngine` starts from the empty chamber and adds one
  reduced invariant of a smaller torus per wall crossed, recursing down to
  rank zero.

Classes ``alpha`` are either a :class:`ClassCombo` (linear combination of
weight monomials) or a :class:`~toricvortex.poly_residue.MultiPoly` on the
Lie algebra.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import exact_lattice as el
from . import toric_geometry as tg
from .errors import (
    AlgorithmMismatch,
    DimensionMismatch,
    NegativeExpectedDimension,
    NotProper,
    SingularParameter,
)
from .poly_residue import (
    LinearFactor,
    MultiPoly,
    WallClassReducer,
    residue_at_infinity,
    weight_monomial,
)
from .toric_geometry import WeightSystem

Partition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DegreeData:
    lam: tuple[int, ...]
    d: tuple[int, ...]
    m: int

    @classmethod
    def of(cls, W: WeightSystem, lam: Sequence[int]) -> "DegreeData":
        lam = tuple(int(x) for x in lam)
        if len(lam) != W.k:
            raise DimensionMismatch(f"lambda has length {len(lam)}, expected {W.k}")
        return cls(lam, W.degrees(lam), W.expected_dimension(lam))


@dataclass(frozen=True)
class ClassCombo:
    """``sum c * w^ell`` over the stored terms."""

    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    @classmethod
    def monomial(cls, ell: Sequence[int], c=1) -> "ClassCombo":
        return cls(((Fraction(c), tuple(ell)),))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "ClassCombo":
        return cls(tuple((Fraction(c), tuple(ell)) for c, ell in pairs))

    def to_poly(self, W: WeightSystem) -> MultiPoly:
        out = MultiPoly(W.k)
        for c, ell in self.terms:
            out = out + c * weight_monomial(W, ell)
        return out


Alpha = Union[ClassCombo, MultiPoly]


def poly_to_combo(W: WeightSystem, alpha: MultiPoly) -> ClassCombo:
    """Rewrite a polynomial on the Lie algebra in monomials of the first basis of weights."""
    if alpha.nvars != W.k:
        raise DimensionMismatch("alpha must be a polynomial in k variables")
    if W.k == 0:
        return ClassCombo(((alpha.constant_term(), ()),)) if not alpha.is_zero() else ClassCombo(())
    J = tg._independent_subsets(W, tuple(range(W.n)), W.k)[0]
    M = [W.weights[j] for j in J]
    # x_i = sum_j A[i][j] * <w_{J_j}, x>
    cols = []
    for i in range(W.k):
        target = [int(r == i) for r in range(W.k)]
        cols.append(el.solve_linear(M, target))
    images = [MultiPoly.linear(cols[i]) for i in range(W.k)]
    in_w = alpha.substitute(images)
    pairs = []
    for e, c in sorted(in_w.terms.items(), reverse=True):
        ell = [0] * W.n
        for j, p in zip(J, e):
            ell[j] = p
        pairs.append((c, tuple(ell)))
    return ClassCombo(tuple(pairs))


def as_combo(W: WeightSystem, alpha: Alpha) -> ClassCombo:
    if isinstance(alpha, ClassCombo):
        for _, ell in alpha.terms:
            if len(ell) != W.n or any(x < 0 for x in ell):
                raise DimensionMismatch(f"bad exponent vector {ell}")
        return alpha
    return poly_to_combo(W, alpha)


def as_poly(W: WeightSystem, alpha: Alpha) -> MultiPoly:
    return alpha if isinstance(alpha, MultiPoly) else alpha.to_poly(W)


# ---------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=256)
def dimension_partitions(W: WeightSystem) -> tuple[Partition, ...]:
    """All ordered partitions satisfying the flag (dimension) condition, lexicographically sorted."""
    out: list[Partition] = []

    def rec(prefix, unused, rows):
        j = len(prefix) + 1
        if j > W.k:
            if not unused:
                out.append(tuple(prefix))
            return
        blocks = set()
        for nu in unused:
            base = rows + [W.weights[nu]]
            block = tuple(mu for mu in unused if el.rank(base + [W.weights[mu]]) == j)
            blocks.add(block)
        for block in sorted(blocks):
            rest = tuple(mu for mu in unused if mu not in block)
            rec(prefix + [block], rest, rows + [W.weights[block[0]]])

    rec([], tuple(range(W.n)), [])
    return tuple(out)


def _block_sums_ok(partition: Partition, s: Sequence[int]) -> bool:
    return all(sum(s[nu] for nu in block) == -1 for block in partition)


def partitions(W: WeightSystem, lam: Sequence[int], ell: Sequence[int], mode: str = "all"):
    """Partitions in I_lambda(ell); ``mode='exists'`` returns a bool."""
    d = W.degrees(lam)
    s = [l - dd - 1 for l, dd in zip(ell, d)]
    hits = (p for p in dimension_partitions(W) if _block_sums_ok(p, s))
    if mode == "exists":
        return next(hits, None) is not None
    if mode != "all":
        raise ValueError(f"unknown mode {mode!r}")
    return list(hits)


def i_index(d: Sequence[int], ell: Sequence[int]) -> int:
    return sum(max(l - dd - 1, 0) if dd >= 0 else l for dd, l in zip(d, ell))


# ---------------------------------------------------------------------------
# direct evaluation


def shift_multiplier(W: WeightSystem, d: Sequence[int]) -> int:
    """Least c >= 0 with d_nu + c <w_nu, zeta> >= -1 for every nu."""
    zeta = W.properness_witness
    c = 0
    for w, dd in zip(W.weights, d):
        p = el.dot(w, zeta)
        if p <= 0:
            raise NotProper("properness witness fails")
        need = -1 - dd
        if need > 0:
            c = max(c, -(-need // p))
    return c


class DirectEvaluator:
    """Evaluates Phi_lambda on monomials at a fixed regular tau by rewriting.

    A monomial ``w^l`` is tracked through its exponent vector
    ``s = l - d - 1`` of the integrand ``prod <w_nu, x>^(s_nu)``, which the
    shift by a multiple of the properness witness leaves unchanged.  Rewriting
    rules, in order:

    * poles (``s_nu < 0``) that do not span: the value is 0;
    * a numerator factor (``s_nu0 > 0``): substitute ``w_nu0 = sum c_j w_nu_j``
      over one pole per block of the lexicographically first partition in
      I_lambda(l), or over the first basis of poles when there is none;
    * exactly k simple poles: ``1/|det|`` if tau lies in their cone, else 0;
    * more than k poles: insert ``1 = sum c_j w_j / w_nu0`` along a linear
      dependency, which terminates because either a pole disappears or the
      pole orders on the fixed basis drop.

    With ``vanishing="partition"`` an empty I_lambda(l) is taken to force 0
    instead; that rule is not sound in general and exists for comparison.

    Args:
        W: weight system.
        tau: regular parameter.
        lam: lattice vector.
        cache_size: LRU budget for the memo (None = unbounded).
        debug: cross-check every rewrite step with the wall-crossing engine.
        vanishing: "span" (default) or "partition".
    """

    def __init__(self, W: WeightSystem, tau, lam: Sequence[int], cache_size: int | None = None,
                 debug: bool = False, seed: int = 0, vanishing: str = "span"):
        if vanishing not in ("span", "partition"):
            raise ValueError(f"unknown vanishing rule {vanishing!r}")
        self.W = W
        self.tau = tg.as_vector(tau)
        if not tg.is_regular(W, self.tau):
            raise SingularParameter(f"tau={tg._fmt(self.tau)} is a singular value")
        self.degree = DegreeData.of(W, lam)
        c = shift_multiplier(W, self.degree.d)
        self.shift = tuple(c * z for z in W.properness_witness)
        self.shifted = DegreeData.of(W, tuple(a + b for a, b in zip(self.degree.lam, self.shift)))
        self.vanishing = vanishing
        self._value = lru_cache(maxsize=cache_size)(self._reduce)
        self.debug = debug
        self.seed = seed
        self._checkers: dict[int, WallCrossEngine] = {}
        self.base_cases = 0

    def monomial(self, ell: Sequence[int]) -> Fraction:
        ell = tuple(ell)
        if sum(ell) != self.degree.m:
            return Fraction(0)
        return self._value(tuple(l - dd - 1 for l, dd in zip(ell, self.degree.d)))

    def __call__(self, alpha: Alpha) -> Fraction:
        combo = as_combo(self.W, alpha)
        return sum((c * self.monomial(ell) for c, ell in combo.terms), Fraction(0))

    def _first_partition(self, s):
        return next((p for p in dimension_partitions(self.W) if _block_sums_ok(p, s)), None)

    def _reduce(self, s: tuple[int, ...]) -> Fraction:
        W = self.W
        poles = tuple(nu for nu in range(W.n) if s[nu] < 0)
        terms = None
        part = None
        if self.vanishing == "partition":
            part = self._first_partition(s)
            if part is None:
                return self._checked(s, Fraction(0))
        bases = tg._independent_subsets(W, poles, W.k)
        if not bases:
            return self._checked(s, Fraction(0))
        if any(x > 0 for x in s):
            nu0 = next(nu for nu in range(W.n) if s[nu] > 0)
            if part is None:
                part = self._first_partition(s)
            if part is not None:
                picks = [next(nu for nu in block if s[nu] < 0) for block in part]
            else:
                picks = list(bases[0])
            coeffs = el.solve_linear([W.weights[j] for j in picks], W.weights[nu0])
            terms = [(c, _move(s, j, nu0)) for j, c in zip(picks, coeffs) if c]
        elif len(poles) == W.k:
            self.base_cases += 1
            if tg.cone_contains(W, poles, self.tau)[0]:
                value = Fraction(1, el.det_abs_in_lattice([W.weights[j] for j in poles]))
            else:
                value = Fraction(0)
            return self._checked(s, value)
        else:
            basis = bases[0]
            nu0 = next(nu for nu in poles if nu not in basis)
            coeffs = el.solve_linear([W.weights[j] for j in basis], W.weights[nu0])
            terms = [(c, _move(s, j, nu0)) for j, c in zip(basis, coeffs) if c]
        value = sum((c * self._value(t) for c, t in terms), Fraction(0))
        if self.debug:
            self._check_terms(s, terms)
        return value

    # debug cross-checks -----------------------------------------------------

    def _checker_value(self, s) -> Fraction:
        """Wall-crossing value of prod w^s, shifted until the numerator is a polynomial."""
        W = self.W
        zeta = W.properness_witness
        c = 0
        while True:
            lam = tuple(a + c * z for a, z in zip(self.shifted.lam, zeta))
            ell = tuple(x + dd + 1 for x, dd in zip(s, W.degrees(lam)))
            if all(x >= 0 for x in ell):
                break
            c += 1
        if c not in self._checkers:
            self._checkers[c] = WallCrossEngine(W, self.tau, lam, self.seed)
        return self._checkers[c].monomial(ell)

    def _checked(self, s, value: Fraction) -> Fraction:
        if self.debug and self.vanishing == "span":
            other = self._checker_value(s)
            if other != value:
                raise AlgorithmMismatch(value, other, f"base case s={s}")
        return value

    def _check_terms(self, s, terms):
        lhs = self._checker_value(s)
        rhs = sum((c * self._checker_value(t) for c, t in terms), Fraction(0))
        if lhs != rhs:
            raise AlgorithmMismatch(rhs, lhs, f"rewrite step at s={s}")


def _move(s: tuple[int, ...], gain: int, lose: int) -> tuple[int, ...]:
    out = list(s)
    out[gain] += 1
    out[lose] -= 1
    return tuple(out)


def invariant_direct(W: WeightSystem, tau, lam: Sequence[int], alpha: Alpha,
                     cache_size: int | None = None, debug: bool = False,
                     vanishing: str = "span") -> Fraction:
    return DirectEvaluator(W, tau, lam, cache_size, debug, vanishing=vanishing)(alpha)


# ---------------------------------------------------------------------------
# wall crossing


class WallCrossEngine:
    """Evaluates Phi_lambda at tau as a sum of reduced invariants over a generic path.

    The path starts at ``-sum w_nu``, which lies outside the image of the
    moment map, so the invariant vanishes there.  Per-monomial results are
    cached for the lifetime of the engine.
    """

    def __init__(self, W: WeightSystem, tau, lam: Sequence[int], seed: int = 0,
                 max_retries: int = 16, start=None):
        self.W = W
        self.tau = tg.as_vector(tau)
        self.degree = DegreeData.of(W, lam)
        self.crossings = []
        self._cache: dict[tuple[int, ...], Fraction] = {}
        if W.k == 0:
            return
        if not tg.is_regular(W, self.tau):
            raise SingularParameter(f"tau={tg._fmt(self.tau)} is a singular value")
        start = tg.outside_point(W) if start is None else tg.as_vector(start)
        path = tg.find_path(W, start, self.tau, seed, max_retries)
        self.path = path
        for cr in path.crossings:
            red = tg.wall_reduction(W, cr.wall, self.degree.lam, cr.tau0, cr.e1)
            reducer = WallClassReducer(W, red.indices, red.basis, self.degree.lam)
            child = WallCrossEngine(red.system, red.tau0, red.lambda0, seed, max_retries)
            self.crossings.append((cr, red, reducer, child))

    def monomial(self, ell: Sequence[int]) -> Fraction:
        """Phi on the weight monomial w^ell."""
        ell = tuple(ell)
        if sum(ell) != self.degree.m:
            return Fraction(0)
        return self.poly(weight_monomial(self.W, ell))

    def coordinate_monomial(self, exponent: tuple[int, ...]) -> Fraction:
        if exponent not in self._cache:
            if self.W.k == 0:
                value = Fraction(1) if self.degree.m == 0 else Fraction(0)
            elif sum(exponent) != self.degree.m:
                value = Fraction(0)
            else:
                value = Fraction(0)
                for _, _, reducer, child in self.crossings:
                    value += child.poly(reducer.monomial(exponent))
            self._cache[exponent] = value
        return self._cache[exponent]

    def poly(self, alpha: MultiPoly) -> Fraction:
        return sum((c * self.coordinate_monomial(e) for e, c in alpha.terms.items()), Fraction(0))

    def __call__(self, alpha: Alpha) -> Fraction:
        return self.poly(as_poly(self.W, alpha))


def invariant_wallcross(W: WeightSystem, tau, lam: Sequence[int], alpha: Alpha,
                        seed: int = 0, max_retries: int = 16) -> Fraction:
    return WallCrossEngine(W, tau, lam, seed, max_retries)(alpha)


def invariant(W: WeightSystem, tau, lam: Sequence[int], alpha: Alpha, mode: str = "direct",
              seed: int = 0, cache_size: int | None = None) -> Fraction:
    """Dispatch to one algorithm, or run both (``mode='checked'``) and compare."""
    if mode == "direct":
        return invariant_direct(W, tau, lam, alpha, cache_size)
    if mode == "wallcross":
        return invariant_wallcross(W, tau, lam, alpha, seed)
    if mode == "checked":
        a = invariant_direct(W, tau, lam, alpha, cache_size)
        b = invariant_wallcross(W, tau, lam, alpha, seed)
        if a != b:
            raise AlgorithmMismatch(a, b)
        return a
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# rank one, arbitrary genus


def rank1_genus_invariant(weights: Sequence[int], d: int, g: int, tau=1) -> Fraction:
    """Phi of c^m for positive weights l_nu, degree d and genus g.

    Evaluated as the single wall-crossing residue from the empty chamber; the
    Jacobian contributes ``(sum l)^g`` through the ``Omega^g`` coefficient.
    """
    if any(l <= 0 for l in weights):
        raise ValueError("weights must be positive")
    m = sum(d * l + 1 - g for l in weights) + g - 1
    if m < 0:
        raise NegativeExpectedDimension(f"m={m} < 0")
    if Fraction(tau) == 0:
        raise SingularParameter("tau=0 is singular")
    if Fraction(tau) < 0:
        return Fraction(0)
    empty = MultiPoly(0, {(): 0})
    factors = [LinearFactor(Fraction(1), empty, m - g)]
    factors += [LinearFactor(Fraction(l), empty, -(d * l + 1 - g)) for l in weights]
    res = residue_at_infinity(MultiPoly.constant(1), factors).constant_term()
    return Fraction(sum(weights)) ** g * res


# ---------------------------------------------------------------------------
# single wall check


@dataclass(frozen=True)
class WallCrossReport:
    wall: tg.Wall
    tau0: tuple[Fraction, ...]
    tau1: tuple[Fraction, ...]
    epsilon: Fraction
    plus: Fraction
    minus: Fraction
    reduced: Fraction
    e1: tuple[int, ...]
    flipped: bool

    @property
    def passed(self) -> bool:
        return self.plus - self.minus == self.reduced


def generic_point_on_wall(W: WeightSystem, wall: tg.Wall, seed: int = 0, tries: int = 64):
    """A point in the relative interior of the wall cone lying on no other wall."""
    rng = random.Random(seed)
    I = wall.indices
    for attempt in range(tries):
        coeffs = [Fraction(1) if attempt == 0 else Fraction(rng.randint(1, 97), rng.randint(1, 13))
                  for _ in I]
        p = tuple(sum((c * W.weights[i][r] for c, i in zip(coeffs, I)), Fraction(0))
                  for r in range(W.k))
        if tg.generic_wall_point(W, wall, p):
            return p
    raise tg.DegeneratePath("no generic point found on the wall")


def wallcross_check(W: WeightSystem, wall: tg.Wall, lam: Sequence[int], alpha: Alpha,
                    tau0=None, tau1=None, seed: int = 0) -> WallCrossReport:
    """Checks Phi(tau0 + eps tau1) - Phi(tau0 - eps tau1) = Phi_0(alpha_0) at one wall.

    All three values come from the direct evaluator, independently.
    """
    tau0 = tg.as_vector(tau0) if tau0 is not None else generic_point_on_wall(W, wall, seed)
    if not tg.generic_wall_point(W, wall, tau0):
        raise SingularParameter("tau0 is not a generic point of the wall")
    tau1 = tg.as_vector(tau1) if tau1 is not None else tg.as_vector(wall.normal)
    side = el.dot(tau1, wall.normal)
    if side == 0:
        raise ValueError("tau1 is parallel to the wall")
    flipped = side < 0
    e1 = tuple(-x for x in wall.normal) if flipped else wall.normal
    # stay clear of every other wall hyperplane
    eps = Fraction(1)
    for other in tg.enumerate_walls(W):
        a, b = el.dot(tau0, other.normal), el.dot(tau1, other.normal)
        if b and a:
            eps = min(eps, abs(a / b) / 2)
    plus_pt = tuple(a + eps * b for a, b in zip(tau0, tau1))
    minus_pt = tuple(a - eps * b for a, b in zip(tau0, tau1))
    plus = invariant_direct(W, plus_pt, lam, alpha)
    minus = invariant_direct(W, minus_pt, lam, alpha)
    red = tg.wall_reduction(W, wall, lam, tau0, e1)
    alpha0 = WallClassReducer(W, red.indices, red.basis, lam)(as_poly(W, alpha))
    reduced = invariant_direct(red.system, red.tau0, red.lambda0, alpha0)
    return WallCrossReport(wall, tau0, tau1, eps, plus, minus, reduced, e1, flipped)
