"""Classical and quantum cohomology rings of toric quotients.

Generators ``u_1..u_n`` are the classes of the coordinate divisors.  Relations
come in three families: linear ones from the kernel of the weight map,
monomial ones from minimal empty faces of the moment polytope, and quantum
ones ``u^{d+} = q^lambda u^{d-}`` built from the same minimal empty faces.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import exact_lattice as el
from . import toric_geometry as tg
from .errors import (
    ChernNumberTooSmall,
    ConstructionFailure,
    EmptyQuotient,
    NotFree,
    NotInH2,
    NotMonotone,
)
from .toric_geometry import WeightSystem
from .vortex_invariants import ClassCombo, DirectEvaluator, invariant_direct


@dataclass(frozen=True)
class QuantumRelation:
    """``u^{d_plus} = q^lam u^{d_minus}`` with ``q^lam`` of degree ``qdeg``."""

    d_plus: tuple[int, ...]
    d_minus: tuple[int, ...]
    lam: tuple[int, ...]
    qdeg: Fraction


@dataclass(frozen=True)
class RingPresentation:
    n: int
    linear: tuple[tuple[int, ...], ...]
    monomial: tuple[tuple[int, ...], ...]
    vanishing: tuple[int, ...] = ()
    quantum: tuple[QuantumRelation, ...] = field(default=())

    def to_json(self) -> dict:
        """Serializable form with 1-based generator indices."""
        return {
            "linear": [list(eta) for eta in self.linear],
            "monomial": [[i + 1 for i in I] for I in self.monomial],
            "vanishing": [i + 1 for i in self.vanishing],
            "quantum": [{"dplus": list(r.d_plus), "dminus": list(r.d_minus),
                         "lambda": list(r.lam), "qdeg": _rat(r.qdeg)} for r in self.quantum],
        }


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _canonical(sets) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(I)) for I in sets), key=lambda I: (len(I), I)))


def _require_free(W: WeightSystem, tau):
    if not tg.in_image(W, tau):
        raise EmptyQuotient("the quotient is empty")
    if not tg.acts_freely(W, tau):
        raise NotFree("the torus does not act freely on the level set")


# ---------------------------------------------------------------------------
# linear relations


def linear_relations(W: WeightSystem) -> tuple[tuple[int, ...], ...]:
    """Integer basis of {eta : sum eta_nu w_nu = 0}, in reversed-column row Hermite form.

    Pivots sit on the highest indices, so that each relation expresses a late
    generator through earlier ones.
    """
    basis = el.integer_kernel_basis(el.transpose(W.weights, ncols=W.k), ncols=W.n) \
        if W.k else el.identity(W.n)
    flipped = [tuple(reversed(v)) for v in basis]
    H = [tuple(reversed(v)) for v in el.row_hermite_basis(flipped, W.n)]
    return tuple(sorted(H, key=_pivot))


def _pivot(eta: Sequence[int]) -> int:
    return max(i for i, x in enumerate(eta) if x)


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], dim: int) -> bool:
    return el.row_hermite_basis(list(a), dim) == el.row_hermite_basis(list(b), dim)


def render_linear(eta: Sequence[int]) -> str:
    """``u_p = ...`` where p is the highest index with nonzero coefficient (made positive)."""
    p = max(i for i, x in enumerate(eta) if x)
    sign = 1 if eta[p] > 0 else -1
    lead = abs(eta[p])
    rhs = [(-sign * eta[i], i) for i in reversed(range(p)) if eta[i]]
    left = f"{lead}*u{p + 1}" if lead != 1 else f"u{p + 1}"
    return f"{left} = {_render_sum(rhs)}"


def _render_sum(terms) -> str:
    if not terms:
        return "0"
    out = ""
    for c, i in terms:
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if not out:
            out = ("-" if c < 0 else "") + f"{mag}u{i + 1}"
        else:
            out += (" - " if c < 0 else " + ") + f"{mag}u{i + 1}"
    return out


def render_linear_chain(linear: Sequence[Sequence[int]]) -> list[str]:
    """Group relations sharing a right-hand side into chains like ``u3 = u4 = u2 - u1``."""
    groups: dict[str, list[int]] = {}
    order = []
    for eta in linear:
        p = max(i for i, x in enumerate(eta) if x)
        if abs(eta[p]) != 1:
            key = render_linear(eta)
            groups.setdefault(key, [])
            order.append(key)
            continue
        sign = 1 if eta[p] > 0 else -1
        rhs = _render_sum([(-sign * eta[i], i) for i in reversed(range(p)) if eta[i]])
        if rhs not in groups:
            order.append(rhs)
        groups.setdefault(rhs, []).append(p)
    lines = []
    for rhs in order:
        members = groups[rhs]
        if not members:
            lines.append(rhs)
            continue
        names = " = ".join(f"u{p + 1}" for p in sorted(members))
        lines.append(f"{names} = {rhs}")
    return lines


# ---------------------------------------------------------------------------
# classical presentation


def primitive_collections(W: WeightSystem, tau) -> tuple[tuple[int, ...], ...]:
    """Minimal index sets I with empty face, by size with hereditary pruning."""
    tau = tg.as_vector(tau)
    nonempty = tg.nonempty_faces(W, tau)
    ne = {I for faces in nonempty.values() for I in faces}
    out = []
    for size in range(1, W.n + 1):
        prev = nonempty.get(size - 1, ())
        if not prev:
            break
        for I in combinations(range(W.n), size):
            if I in ne:
                continue
            if all(I[:i] + I[i + 1:] in ne for i in range(size)):
                out.append(I)
    return _canonical(out)


def classical_presentation(W: WeightSystem, tau) -> RingPresentation:
    tau = tg.as_vector(tau)
    if not tg.is_regular(W, tau):
        raise tg.SingularParameter("singular parameter")
    _require_free(W, tau)
    prims = primitive_collections(W, tau)
    vanishing = tuple(I[0] for I in prims if len(I) == 1)
    return RingPresentation(W.n, linear_relations(W), prims, vanishing)


def betti_numbers(W: WeightSystem, tau) -> tuple[int, ...]:
    """Even Betti numbers b_0, b_2, ... from the h-vector of the moment polytope."""
    tau = tg.as_vector(tau)
    _require_free(W, tau)
    P = tg.moment_polytope(W, tau)
    f = P.f_vector
    dim = P.dimension
    # sum_i f_i (t-1)^i = sum_i h_i t^i
    h = [0] * (dim + 1)
    for i, fi in enumerate(f):
        for j in range(i + 1):
            h[j] += fi * comb(i, j) * (-1) ** (i - j)
    return tuple(h)


def euler_characteristic(W: WeightSystem, tau) -> int:
    return sum(betti_numbers(W, tau))


def chern_classes(W: WeightSystem, tau) -> list[ClassCombo]:
    """c_j as the j-th elementary symmetric polynomial in the u's (monomials w^ell)."""
    _require_free(W, tau)
    out = []
    for j in range(W.n - W.k + 1):
        terms = []
        for S in combinations(range(W.n), j):
            ell = tuple(int(i in S) for i in range(W.n))
            terms.append((Fraction(1), ell))
        out.append(ClassCombo(tuple(terms)))
    return out


def monotone_check(W: WeightSystem, tau) -> bool:
    """Whether tau equals the anticanonical parameter sum w_nu."""
    _require_free(W, tau)
    return tg.as_vector(tau) == tg.as_vector(W.total_weight)


# ---------------------------------------------------------------------------
# quantum presentation


def _anticanonical(W: WeightSystem) -> tg.Vector:
    return tg.as_vector(W.total_weight)


def _require_monotone_setting(W: WeightSystem, tau=None, need_chern: bool = True):
    t = _anticanonical(W)
    if tau is not None and tg.as_vector(tau) != t:
        raise NotMonotone("tau must equal the sum of the weights")
    if not tg.is_regular(W, t):
        raise tg.SingularParameter("sum of weights is a singular value")
    _require_free(W, t)
    if need_chern and minimal_chern(W) < 2:
        raise ChernNumberTooSmall(f"minimal Chern number {minimal_chern(W)} < 2")
    return t


def minimal_chern(W: WeightSystem) -> int:
    return tg.minimal_chern_number(W)


def quantum_relation_for(W: WeightSystem, I: Sequence[int], tau=None) -> QuantumRelation:
    """The relation attached to a minimal empty face I.

    The vector sum of the fan rays indexed by I lies in the cone of some
    vertex J; writing it there with positive coefficients c gives the degree
    vector d (1 on I, -c on J), which lifts to a unique lattice class.
    """
    t = _require_monotone_setting(W, tau, need_chern=False)
    I = tuple(sorted(I))
    P = tg.moment_polytope(W, t)
    v = [int(i in I) for i in range(W.n)]
    J, c = tg.vertex_cone_containing(P, v)
    support = {j: cj for j, cj in zip(sorted(J), c) if cj}
    if any(cj.denominator != 1 for cj in support.values()):
        raise ConstructionFailure(f"non-integral certificate for {I}")
    if set(support) & set(I):
        raise ConstructionFailure(f"collection {I} meets the cone of {tuple(support)}")
    d = [0] * W.n
    for i in I:
        d[i] = 1
    for j, cj in support.items():
        d[j] = -int(cj)
    lam = tg.lift_degree_vector(W, t, d)
    d_plus = tuple(max(x, 0) for x in d)
    d_minus = tuple(max(-x, 0) for x in d)
    return QuantumRelation(d_plus, d_minus, lam, 2 * el.dot(t, lam))


def batyrev_presentation(W: WeightSystem) -> RingPresentation:
    t = _require_monotone_setting(W)
    classical = classical_presentation(W, t)
    quantum = tuple(quantum_relation_for(W, I) for I in classical.monomial)
    return RingPresentation(W.n, classical.linear, classical.monomial, classical.vanishing, quantum)


# ---------------------------------------------------------------------------
# Gromov-Witten invariants and relation checks


def gw_invariant(W: WeightSystem, lam: Sequence[int], ell: Sequence[int], debug: bool = False) -> Fraction:
    """Genus-zero GW invariant with the divisor class of u_nu inserted ell_nu times."""
    t = _require_monotone_setting(W)
    lam = tuple(lam)
    if not tg.in_lambda_tau(W, t, lam):
        raise NotInH2(f"{lam} pairs nontrivially with a vanishing divisor")
    eff = tg.effective_cone(W, t)
    if not eff.contains(lam):
        if debug and invariant_direct(W, t, lam, ClassCombo.monomial(ell)) != 0:
            raise ConstructionFailure("nonzero invariant outside the effective cone")
        return Fraction(0)
    return invariant_direct(W, t, lam, ClassCombo.monomial(ell))


@dataclass(frozen=True)
class VerificationReport:
    relation: QuantumRelation
    trials: int
    passed: int
    counterexamples: tuple[tuple[tuple[int, ...], tuple[int, ...], Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


def verify_quantum_relation(W: WeightSystem, rel: QuantumRelation, trials: int = 50,
                            seed: int = 0, max_lambda: int = 2) -> VerificationReport:
    """Checks Phi_{lam'}(w^{d+ + ell}) = Phi_{lam' - lam}(w^{d- + ell}) on random (lam', ell).

    ``lam'`` ranges over small lattice vectors such that the left side has a
    nonnegative expected dimension; ``ell`` is a random monomial of matching
    degree.
    """
    t = _require_monotone_setting(W)
    rng = random.Random(seed)
    evaluators: dict[tuple[int, ...], DirectEvaluator] = {}

    def ev(lam):
        if lam not in evaluators:
            evaluators[lam] = DirectEvaluator(W, t, lam)
        return evaluators[lam]

    passed = 0
    bad = []
    for _ in range(trials):
        while True:
            lam1 = tuple(rng.randint(-max_lambda, max_lambda) for _ in range(W.k))
            rest = W.expected_dimension(lam1) - sum(rel.d_plus)
            if 0 <= rest <= 8:
                break
        ell = _random_composition(rng, rest, W.n)
        lhs = ev(lam1).monomial(tuple(a + b for a, b in zip(rel.d_plus, ell)))
        lam2 = tuple(a - b for a, b in zip(lam1, rel.lam))
        rhs = ev(lam2).monomial(tuple(a + b for a, b in zip(rel.d_minus, ell)))
        if lhs == rhs:
            passed += 1
        else:
            bad.append((lam1, ell, lhs, rhs))
    return VerificationReport(rel, trials, passed, tuple(bad))


def _random_composition(rng: random.Random, total: int, parts: int) -> tuple[int, ...]:
    out = [0] * parts
    for _ in range(total):
        out[rng.randrange(parts)] += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# rendering and elimination


def novikov_monomial(lam: Sequence[int], generators: Sequence[Sequence[int]] | None = None) -> str:
    """``q1^a q2^b`` in the given generator basis when it is a lattice basis, else ``q^(lam)``."""
    lam = tuple(lam)
    if not any(lam):
        return "1"
    if generators and len(generators) == len(lam) and \
            el.det_abs_in_lattice([tuple(g) for g in generators]) == 1:
        coords = el.solve_linear([tuple(g) for g in generators], lam)
        if all(c >= 0 for c in coords):
            parts = []
            for i, c in enumerate(coords):
                if c:
                    parts.append(f"q{i + 1}" if c == 1 else f"q{i + 1}^{c}")
            return "*".join(parts)
    return "q^(" + ",".join(str(x) for x in lam) + ")"


def _render_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e:
            parts.append(f"u{i + 1}" if e == 1 else f"u{i + 1}^{e}")
    return "*".join(parts)


def render_quantum(rel: QuantumRelation, generators=None, symbolic: bool = False) -> str:
    q = novikov_monomial(rel.lam, None if symbolic else generators)
    right = _render_monomial(rel.d_minus)
    rhs = q if not right else (right if q == "1" else f"{right}*{q}")
    return f"{_render_monomial(rel.d_plus)} = {rhs}"


def render_presentation(pres: RingPresentation, generators=None) -> list[str]:
    lines = render_linear_chain(pres.linear)
    lines += [f"u{i + 1} = 0" for i in pres.vanishing]
    lines += [render_quantum(r, generators) for r in pres.quantum] if pres.quantum else \
        [_render_monomial([int(i in I) for i in range(pres.n)]) + " = 0" for I in pres.monomial if len(I) > 1]
    return lines


def eliminate(pres: RingPresentation) -> tuple[tuple[Fraction, ...], ...]:
    """Each generator as a combination of the generators surviving linear elimination.

    The survivors are the indices that are not pivots of a linear relation.
    """
    pivots = {}
    for eta in pres.linear:
        p = max(i for i, x in enumerate(eta) if x)
        pivots[p] = eta
    free = [i for i in range(pres.n) if i not in pivots]
    expr = {i: tuple(Fraction(int(j == i)) for j in free) for i in free}
    # a pivot row only involves earlier indices, so increasing order resolves everything
    for i in sorted(pivots):
        eta = pivots[i]
        acc = [Fraction(0)] * len(free)
        for j in range(i):
            if eta[j]:
                for a, x in enumerate(expr[j]):
                    acc[a] += Fraction(-eta[j], eta[i]) * x
        expr[i] = tuple(acc)
    return tuple(expr[i] for i in range(pres.n))


def eliminated_relation(pres: RingPresentation, rel: QuantumRelation):
    """Both sides as polynomials in the surviving generators: (free indices, lhs, rhs terms)."""
    from .poly_residue import MultiPoly

    expr = eliminate(pres)
    m = len(expr[0]) if expr else 0
    lin = [MultiPoly.linear(e) for e in expr]

    def side(exps):
        out = MultiPoly.constant(m)
        for i, e in enumerate(exps):
            if e:
                out = out * lin[i] ** e
        return out

    free = [i for i in range(pres.n) if all(
        i != max(j for j, x in enumerate(eta) if x) for eta in pres.linear)]
    return tuple(free), side(rel.d_plus), side(rel.d_minus)
