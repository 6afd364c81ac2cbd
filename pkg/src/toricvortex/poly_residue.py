"""Exact multivariate polynomials and residues at infinity.

Residues here are coefficients of ``z^-1`` in the expansion at ``z = infinity``
of ``P(x, z) * prod (a_i z + b_i(x))^(e_i)``, with ``a_i`` nonzero constants
and ``b_i`` linear forms in the remaining variables.  Exponents may be
negative; the expansion uses generalized binomial coefficients and is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exact_lattice as el
from .errors import DimensionMismatch, ZeroLeadingCoefficient
from .toric_geometry import WeightSystem

Exponent = tuple[int, ...]


class MultiPoly:
    """Sparse polynomial with rational coefficients in ``nvars`` variables.

    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(e) != nvars:
                    raise DimensionMismatch(f"exponent {e} in a polynomial of {nvars} variables")
                clean[tuple(e)] = c
        self.terms: dict[Exponent, Fraction] = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "MultiPoly":
        n = len(coeffs)
        terms = {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)}
        terms[(0,) * n] = const
        return cls(n, terms)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.nvars)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base
            p >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if self.is_constant():
                return self.constant_term() == other
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v *= Fraction(x) ** p
            total += v
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise DimensionMismatch("one image per variable is required")
        if not images:
            return self
        target = images[0].nvars
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, p):
            if (i, p) not in cache:
                cache[(i, p)] = images[i] ** p
            return cache[(i, p)]

        out = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, p in enumerate(e):
                if p:
                    term = term * power(i, p)
            out = out + term
        return out

    def split_last(self) -> dict[int, "MultiPoly"]:
        """Coefficients with respect to the last variable."""
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[-1], {})[e[:-1]] = c
        return {p: MultiPoly(self.nvars - 1, t) for p, t in parts.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"({c})*{mono}")
        return " + ".join(pieces)


@dataclass(frozen=True)
class LinearFactor:
    """The factor ``(a z + b)^exponent`` where ``b`` is a polynomial free of z."""

    a: Fraction
    b: MultiPoly
    exponent: int


def generalized_binomial(e: int, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (e - i) / (i + 1)
    return out


def residue_at_infinity(P: MultiPoly, factors: Sequence[LinearFactor]) -> MultiPoly:
    """Coefficient of ``z^-1`` of ``P * prod (a z + b)^e`` expanded at infinity.

    ``z`` is the last variable of ``P``; each ``b`` lives in the other
    variables.  With ``u = 1/z`` each factor is ``a^e z^e (1 + (b/a) u)^e``,
    so only the first ``p + sum(e) + 2`` terms of the product series matter
    for a ``z^p`` term of P, and the result is exact.
    """
    m = P.nvars - 1
    if m < 0:
        raise DimensionMismatch("the residue variable is missing")
    for f in factors:
        if f.a == 0:
            raise ZeroLeadingCoefficient("a factor has zero coefficient on the residue variable")
        if f.b.nvars != m:
            raise DimensionMismatch("factor lives in the wrong ring")
    E = sum(f.exponent for f in factors)
    pieces = {p: c for p, c in P.split_last().items() if p + E + 1 >= 0}
    if not pieces:
        return MultiPoly(m)
    N = max(p + E + 1 for p in pieces)
    series = [MultiPoly.constant(m)] + [MultiPoly(m)] * N
    for f in factors:
        a = Fraction(f.a)
        lead = a ** f.exponent
        bpow = MultiPoly.constant(m)
        terms = []
        for j in range(N + 1):
            coeff = generalized_binomial(f.exponent, j)
            if j and f.exponent >= 0 and j > f.exponent:
                break
            terms.append(bpow * (coeff * lead / a ** j))
            bpow = bpow * f.b
        series = [sum((series[i] * terms[j - i] for i in range(j + 1) if j - i < len(terms)),
                      MultiPoly(m)) for j in range(N + 1)]
    out = MultiPoly(m)
    for p, c in pieces.items():
        out = out + c * series[p + E + 1]
    return out


# ---------------------------------------------------------------------------
# iterated residues attached to a partition


def flag_spans(W: WeightSystem, partition: Sequence[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    spans, acc = [], []
    for block in partition:
        acc = acc + [W.weights[i] for i in block]
        spans.append(list(acc))
    return spans


def satisfies_dimension(W: WeightSystem, partition: Sequence[Sequence[int]]) -> bool:
    """Blocks cover all weights and the j-th partial union spans a j-dimensional space."""
    if len(partition) != W.k or sorted(i for b in partition for i in b) != list(range(W.n)):
        return False
    return all(el.rank(s) == j for j, s in enumerate(flag_spans(W, partition), start=1))


def adapted_basis(W: WeightSystem, partition: Sequence[Sequence[int]]) -> el.OrientedBasis:
    if not satisfies_dimension(W, partition):
        raise DimensionMismatch(f"{partition} does not satisfy the dimension condition")
    return el.adapted_oriented_basis(flag_spans(W, partition), W.k)


def iterated_residue(W: WeightSystem, partition: Sequence[Sequence[int]], lam: Sequence[int],
                     alpha: MultiPoly, basis: Sequence[Sequence[int]] | None = None) -> Fraction:
    """Iterated residue of ``alpha / prod <w_nu, x>^(d_nu + 1)`` along a flag.

    Writing ``x = sum z_j e_j`` in the adapted basis, residues at infinity are
    taken in ``z_k`` first and ``z_1`` last.
    """
    k = W.k
    if basis is None:
        basis = adapted_basis(W, partition).vectors
    if alpha.nvars != k:
        raise DimensionMismatch("alpha must be a polynomial on the Lie algebra")
    d = W.degrees(lam)
    coords = [[el.dot(w, e) for e in basis] for w in W.weights]
    images = [MultiPoly.linear([basis[j][i] for j in range(k)]) for i in range(k)]
    P = alpha.substitute(images) if k else alpha
    remaining = list(range(W.n))
    for j in range(k - 1, -1, -1):
        here = [nu for nu in remaining if coords[nu][j] != 0]
        remaining = [nu for nu in remaining if coords[nu][j] == 0]
        factors = [LinearFactor(Fraction(coords[nu][j]), MultiPoly.linear(coords[nu][:j]), -(d[nu] + 1))
                   for nu in here]
        P = residue_at_infinity(P, factors)
    if remaining:
        raise DimensionMismatch("some weights vanish on the whole basis")
    return P.constant_term()


def phi_closed_form(W: WeightSystem, partition: Sequence[Sequence[int]], lam: Sequence[int],
                    ell: Sequence[int], basis: Sequence[Sequence[int]] | None = None) -> Fraction:
    """``prod_j prod_{nu in I_j} <w_nu, e_j>^(l_nu - d_nu - 1)`` for a monomial w^l."""
    d = W.degrees(lam)
    if sum(ell) != W.expected_dimension(lam):
        raise DimensionMismatch("monomial degree differs from the expected dimension")
    if basis is None:
        basis = adapted_basis(W, partition).vectors
    out = Fraction(1)
    for j, block in enumerate(partition):
        if sum(ell[nu] - d[nu] - 1 for nu in block) != -1:
            return Fraction(0)
        for nu in block:
            out *= Fraction(el.dot(W.weights[nu], basis[j])) ** (ell[nu] - d[nu] - 1)
    return out


def weight_monomial(W: WeightSystem, ell: Sequence[int]) -> MultiPoly:
    """``prod <w_nu, x>^(l_nu)`` as a polynomial on the Lie algebra."""
    out = MultiPoly.constant(W.k)
    for w, p in zip(W.weights, ell):
        if p:
            out = out * MultiPoly.linear(w) ** p
    return out


# ---------------------------------------------------------------------------
# reduction of a class to a wall


class WallClassReducer:
    """Computes the reduced class alpha_0 at a wall, cached per coordinate monomial.

    Coordinates: ``x = z e1 + sum_j y_j f_j`` with ``basis = (e1, f_2, ..)``;
    the result is a polynomial in the ``y``.
    """

    def __init__(self, W: WeightSystem, indices: Sequence[int], basis: Sequence[Sequence[int]],
                 lam: Sequence[int]):
        self.k = W.k
        e1, lifts = basis[0], basis[1:]
        inside = set(indices)
        d = W.degrees(lam)
        m = self.k - 1
        self._coord = [(Fraction(e1[i]), MultiPoly.linear([f[i] for f in lifts]))
                       for i in range(self.k)]
        self._factors = []
        for nu, w in enumerate(W.weights):
            if nu in inside:
                continue
            a = el.dot(w, e1)
            b = MultiPoly.linear([el.dot(w, f) for f in lifts])
            self._factors.append(LinearFactor(Fraction(a), b, -(d[nu] + 1)))
        self._cache: dict[Exponent, MultiPoly] = {}

    def monomial(self, exponent: Exponent) -> MultiPoly:
        if exponent not in self._cache:
            m = self.k - 1
            P = MultiPoly.constant(m + 1)
            extra = []
            for i, p in enumerate(exponent):
                if not p:
                    continue
                a, b = self._coord[i]
                if a:
                    extra.append(LinearFactor(a, b, p))
                else:
                    # this coordinate is independent of z
                    P = P * _lift(b) ** p
            self._cache[exponent] = residue_at_infinity(P, extra + self._factors)
        return self._cache[exponent]

    def __call__(self, alpha: MultiPoly) -> MultiPoly:
        out = MultiPoly(self.k - 1)
        for e, c in alpha.terms.items():
            out = out + c * self.monomial(e)
        return out


def _lift(p: MultiPoly) -> MultiPoly:
    """Embed a polynomial in one more (trailing) variable."""
    return MultiPoly(p.nvars + 1, {e + (0,): c for e, c in p.terms.items()})


def reduce_alpha0(W: WeightSystem, indices: Sequence[int], basis: Sequence[Sequence[int]],
                  lam: Sequence[int], alpha: MultiPoly) -> MultiPoly:
    return WallClassReducer(W, indices, basis, lam)(alpha)


def monomials_of_degree(nvars: int, degree: int) -> Iterable[Exponent]:
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest
