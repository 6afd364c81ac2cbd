"""Cones, walls, chambers, moment polytopes and fans of a linear torus action.

A :class:`WeightSystem` holds the weights ``w_1..w_n`` of a diagonal action of
a rank-k torus on C^n, as integer covectors in the standard basis of the dual
lattice.  Parameters ``tau`` are rational covectors.  Index sets are 0-based
tuples internally; the CLI renders them 1-based.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from . import exact_lattice as el
from .errors import (
    DegeneratePath,
    EmptyQuotient,
    InvalidWeightSystem,
    NoLift,
    NotFree,
    NotOutside,
    NotProper,
    SingularParameter,
)

Vector = tuple[Fraction, ...]

JITTER_PRIMES = (10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093,
                 10099, 10103, 10111, 10133, 10139, 10141)


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class WeightSystem:
    """Weights of a diagonal torus action, with the standing assumptions checked.

    The weights must be nonzero, span Q^k, and lie in an open half-space
    (equivalently the moment map is proper).
    """

    k: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ws = tuple(tuple(int(x) for x in w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if self.k < 0:
            raise InvalidWeightSystem("negative torus rank")
        for nu, w in enumerate(ws):
            if len(w) != self.k:
                raise InvalidWeightSystem(f"weight {nu + 1} has length {len(w)}, expected {self.k}")
            if not any(w):
                raise InvalidWeightSystem(f"weight {nu + 1} is zero")
        if el.rank(ws) != self.k:
            raise InvalidWeightSystem("weights do not span the dual Lie algebra")
        self.properness_witness  # raises NotProper

    @classmethod
    def from_weights(cls, weights: Sequence[Sequence[int]], k: int | None = None) -> "WeightSystem":
        weights = [tuple(w) if isinstance(w, (list, tuple)) else (w,) for w in weights]
        if k is None:
            k = len(weights[0]) if weights else 0
        return cls(k, tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def properness_witness(self) -> tuple[int, ...]:
        """Integer ``zeta`` with ``<w_nu, zeta> >= 1`` for every weight.

        Found as a vertex of the polyhedron ``{zeta : <w_nu, zeta> >= 1}``,
        which is pointed because the weights span.
        """
        if self.k == 0:
            return ()
        for S in combinations(range(self.n), self.k):
            rows = [self.weights[i] for i in S]
            if el.rank(rows) < self.k:
                continue
            z = el.solve_linear(el.transpose(rows), [1] * self.k)
            if all(el.dot(w, z) >= 1 for w in self.weights):
                den = lcm(*(x.denominator for x in z))
                return tuple(int(x * den) for x in z)
        raise NotProper("the weights do not lie in an open half-space")

    def degrees(self, lam: Sequence[int]) -> tuple[int, ...]:
        """``d_nu = <w_nu, lambda>``."""
        return tuple(el.dot(w, lam) for w in self.weights)

    def expected_dimension(self, lam: Sequence[int]) -> int:
        return self.n - self.k + sum(self.degrees(lam))

    @cached_property
    def total_weight(self) -> tuple[int, ...]:
        return tuple(sum(w[i] for w in self.weights) for i in range(self.k))


# ---------------------------------------------------------------------------
# cones and regularity


@lru_cache(maxsize=None)
def _independent_subsets(W: WeightSystem, J: tuple[int, ...], size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(S for S in combinations(J, size)
                 if el.rank([W.weights[i] for i in S]) == size)


def _cone_coefficients(W: WeightSystem, S: Sequence[int], tau: Vector) -> tuple[Fraction, ...] | None:
    """Coefficients of tau in the independent set S, or None if tau is not in their span."""
    if not S:
        return () if not any(tau) else None
    return el.solve_linear([W.weights[i] for i in S], tau)


@lru_cache(maxsize=65536)
def _cone_contains(W: WeightSystem, J: tuple[int, ...], tau: Vector):
    r = el.rank([W.weights[i] for i in J]) if J else 0
    for S in _independent_subsets(W, J, r):
        eta = _cone_coefficients(W, S, tau)
        if eta is not None and all(x >= 0 for x in eta):
            cert = dict(zip(S, eta))
            return True, tuple(cert.get(i, Fraction(0)) for i in J)
        if eta is None:
            # tau is not even in the span of J
            return False, None
    return False, None


def cone_contains(W: WeightSystem, J: Iterable[int], tau: Iterable) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Whether tau lies in the closed cone spanned by the weights indexed by J.

    Returns ``(contained, certificate)`` where the certificate lists
    nonnegative coefficients aligned with ``sorted(J)``.
    """
    return _cone_contains(W, tuple(sorted(set(J))), as_vector(tau))


def singular_supports(W: WeightSystem, tau: Iterable) -> list[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
    """All independent (k-1)-subsets S with tau in cone(S), with coefficients.

    tau is singular exactly when this list is nonempty.
    """
    tau = as_vector(tau)
    out = []
    for S in _independent_subsets(W, tuple(range(W.n)), W.k - 1):
        eta = _cone_coefficients(W, S, tau)
        if eta is not None and all(x >= 0 for x in eta):
            out.append((S, eta))
    return out


def is_regular(W: WeightSystem, tau: Iterable) -> bool:
    """tau is regular iff it is not a nonnegative combination of at most k-1 weights."""
    if W.k == 0:
        return True
    return not singular_supports(W, tau)


def _require_regular(W: WeightSystem, tau: Vector):
    if not is_regular(W, tau):
        raise SingularParameter(f"tau={_fmt(tau)} is a singular value")


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def chamber_fingerprint(W: WeightSystem, tau: Iterable) -> frozenset[tuple[int, ...]]:
    """Set of bases J (k-subsets of independent weights) whose cone contains tau."""
    tau = as_vector(tau)
    _require_regular(W, tau)
    return frozenset(J for J in _independent_subsets(W, tuple(range(W.n)), W.k)
                     if cone_contains(W, J, tau)[0])


def in_image(W: WeightSystem, tau: Iterable) -> bool:
    return cone_contains(W, range(W.n), tau)[0]


# ---------------------------------------------------------------------------
# walls and paths


@dataclass(frozen=True)
class Wall:
    """A codimension-one wall: the cone of the weights lying in a hyperplane.

    ``normal`` is the primitive lattice vector annihilating the hyperplane,
    with its sign normalized (first nonzero entry positive); crossings sign it.
    """

    indices: tuple[int, ...]
    normal: tuple[int, ...]


@lru_cache(maxsize=None)
def enumerate_walls(W: WeightSystem) -> tuple[Wall, ...]:
    walls = {}
    for S in _independent_subsets(W, tuple(range(W.n)), W.k - 1):
        rows = [W.weights[i] for i in S]
        (normal,) = el.integer_kernel_basis(rows, ncols=W.k)
        normal = _normalize_sign(normal)
        I = tuple(i for i, w in enumerate(W.weights) if el.dot(w, normal) == 0)
        walls.setdefault(I, Wall(I, normal))
    return tuple(walls[I] for I in sorted(walls))


def _normalize_sign(v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


@dataclass(frozen=True)
class Crossing:
    """A transverse crossing of ``wall`` at path parameter ``t``.

    ``e1`` is the wall normal signed so that it pairs positively with the
    path direction.
    """

    t: Fraction
    wall: Wall
    tau0: Vector
    e1: tuple[int, ...]


@dataclass(frozen=True)
class Path:
    start: Vector
    end: Vector
    crossings: tuple[Crossing, ...]
    attempts: int = 1


def generic_wall_point(W: WeightSystem, wall: Wall, p: Vector) -> bool:
    """Whether p lies in the relative interior of ``wall`` and in no other wall.

    Equivalently every independent (k-1)-subset whose cone contains p spans the
    wall's hyperplane and uses strictly positive coefficients.
    """
    supports = singular_supports(W, p)
    if not supports:
        return False
    I = set(wall.indices)
    return all(set(S) <= I and all(x > 0 for x in eta) for S, eta in supports)


def _crossings(W: WeightSystem, start: Vector, end: Vector) -> list[Crossing] | None:
    """Crossings of the open segment, or None if the segment is not generic."""
    direction = tuple(b - a for a, b in zip(start, end))
    found = []
    for wall in enumerate_walls(W):
        a = el.dot(start, wall.normal)
        b = el.dot(direction, wall.normal)
        if b == 0:
            if a == 0:
                return None
            continue
        t = -a / b
        if not 0 < t < 1:
            continue
        p = tuple(s + t * v for s, v in zip(start, direction))
        if not cone_contains(W, wall.indices, p)[0]:
            continue
        if not generic_wall_point(W, wall, p):
            return None
        e1 = wall.normal if b > 0 else tuple(-x for x in wall.normal)
        found.append(Crossing(t, wall, p, e1))
    found.sort(key=lambda c: c.t)
    if any(c.t == d.t for c, d in zip(found, found[1:])):
        return None
    return found


def find_path(W: WeightSystem, tau_from: Iterable, tau_to: Iterable,
              seed: int = 0, max_retries: int = 16) -> Path:
    """Generic straight path from a parameter outside the image cone to tau_to.

    A degenerate segment is repaired by jittering ``tau_from`` with rationals
    of the form r/p (p a seeded large prime); outside-ness is preserved.
    """
    start, end = as_vector(tau_from), as_vector(tau_to)
    if in_image(W, start):
        raise NotOutside(f"tau_from={_fmt(start)} lies in the image of the moment map")
    _require_regular(W, end)
    rng = random.Random(seed)
    zeta = W.properness_witness
    scale = 2 * (1 + sum(abs(z) for z in zeta))
    current = start
    for attempt in range(max_retries + 1):
        crossings = _crossings(W, current, end)
        if crossings is not None:
            return Path(current, end, tuple(crossings), attempt + 1)
        p = rng.choice(JITTER_PRIMES)
        while True:
            delta = tuple(Fraction(rng.randint(-p, p), p * scale) for _ in range(W.k))
            candidate = tuple(s + d for s, d in zip(start, delta))
            if el.dot(candidate, zeta) < 0:
                break
        current = candidate
    raise DegeneratePath(f"no generic path to {_fmt(end)} after {max_retries} retries")


def path_crossings(W: WeightSystem, tau_from: Iterable, tau_to: Iterable,
                   seed: int = 0, max_retries: int = 16) -> list[Crossing]:
    return list(find_path(W, tau_from, tau_to, seed, max_retries).crossings)


def outside_point(W: WeightSystem) -> Vector:
    """``-sum w_nu``, which pairs negatively with the properness witness."""
    return tuple(Fraction(-x) for x in W.total_weight)


# ---------------------------------------------------------------------------
# reduction at a wall


@dataclass(frozen=True)
class ReducedProblem:
    """The action of T/T_1 on C^I at a wall point.

    ``basis`` is (e1, f_2, ..., f_k); reduced coordinates are those along the
    f's, and the orientation of the reduced lattice is the one making the
    basis positive in Z^k.
    """

    system: WeightSystem
    indices: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    lambda0: tuple[int, ...]
    tau0: Vector

    @property
    def e1(self) -> tuple[int, ...]:
        return self.basis[0]

    @property
    def lifts(self) -> tuple[tuple[int, ...], ...]:
        return self.basis[1:]


def wall_reduction(W: WeightSystem, wall: Wall, lam: Sequence[int], tau0: Iterable,
                   e1: Sequence[int] | None = None) -> ReducedProblem:
    tau0 = as_vector(tau0)
    e1 = tuple(e1) if e1 is not None else wall.normal
    if tuple(abs(x) for x in e1) != tuple(abs(x) for x in wall.normal):
        raise ValueError("e1 must be the wall normal up to sign")
    basis = el.complete_to_basis(e1).vectors
    lifts = basis[1:]
    reduced_weights = tuple(tuple(el.dot(W.weights[i], f) for f in lifts) for i in wall.indices)
    system = WeightSystem(W.k - 1, reduced_weights)
    coords = el.solve_linear(basis, lam)
    lambda0 = tuple(int(c) for c in coords[1:])
    tau_red = tuple(el.dot(tau0, f) for f in lifts)
    if not is_regular(system, tau_red):
        raise SingularParameter("wall point is singular for the reduced action")
    return ReducedProblem(system, wall.indices, basis, lambda0, tau_red)


# ---------------------------------------------------------------------------
# moment polytope and fan


def face_nonempty(W: WeightSystem, tau: Iterable, I: Iterable[int]) -> bool:
    """Delta_I is nonempty iff tau lies in the cone of the complementary weights."""
    tau = as_vector(tau)
    _require_regular(W, tau)
    I = set(I)
    return cone_contains(W, [i for i in range(W.n) if i not in I], tau)[0]


@dataclass(frozen=True)
class MomentPolytope:
    system: WeightSystem
    tau: Vector
    zeta: Vector
    faces: dict = field(compare=False)  # codimension -> tuple of index sets
    vertices: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return self.system.n - self.system.k

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Number of faces of each dimension 0..dim."""
        d = self.dimension
        return tuple(len(self.faces.get(d - i, ())) for i in range(d + 1))

    def vertex_coordinates(self, J: Sequence[int]) -> Vector:
        """The point eta of Delta with eta_j = zeta_j on J."""
        W = self.system
        rest = [i for i in range(W.n) if i not in set(J)]
        ok, cert = cone_contains(W, rest, self.tau)
        if not ok:
            raise ValueError(f"{J} is not a vertex")
        shift = dict(zip(rest, cert))
        return tuple(self.zeta[i] + shift.get(i, 0) for i in range(W.n))


def nonempty_faces(W: WeightSystem, tau: Vector) -> dict[int, tuple[tuple[int, ...], ...]]:
    """Index sets of nonempty faces grouped by size (= codimension), grown level by level."""
    levels = {0: ((),)}
    size = 0
    while levels[size]:
        prev = set(levels[size])
        nxt = []
        for I in levels[size]:
            for j in range(I[-1] + 1 if I else 0, W.n):
                cand = I + (j,)
                if all(cand[:i] + cand[i + 1:] in prev for i in range(len(cand))) \
                        and face_nonempty(W, tau, cand):
                    nxt.append(cand)
        size += 1
        levels[size] = tuple(nxt)
    del levels[size]
    return levels


def moment_polytope(W: WeightSystem, tau: Iterable) -> MomentPolytope:
    """Moment polytope of the quotient, described by its nonempty faces.

    ``zeta`` solves ``sum zeta_nu w_nu = -tau`` using the first basis of
    weights (lexicographic) and zeros elsewhere.
    """
    tau = as_vector(tau)
    _require_regular(W, tau)
    if not in_image(W, tau):
        raise EmptyQuotient(f"tau={_fmt(tau)} is outside the image of the moment map")
    B = _independent_subsets(W, tuple(range(W.n)), W.k)[0] if W.k else ()
    coeffs = el.solve_linear([W.weights[i] for i in B], tuple(-x for x in tau)) if B else ()
    zeta = [Fraction(0)] * W.n
    for i, c in zip(B, coeffs):
        zeta[i] = c
    faces = nonempty_faces(W, tau)
    vertices = faces.get(W.n - W.k, ())
    return MomentPolytope(W, tau, tuple(zeta), faces, vertices)


def support_function_value(P: MomentPolytope, v: Sequence[int]) -> Fraction:
    """min over vertices xi of <xi, v>; v is any representative in Z^n."""
    return min(el.dot(P.vertex_coordinates(J), v) for J in P.vertices)


def dual_cone(P: MomentPolytope, I: Sequence[int]) -> list[tuple[int, ...]]:
    """Generators (unit vectors e_i, i in I) of the cone dual to the face Delta_I."""
    n = P.system.n
    if tuple(sorted(I)) not in P.faces.get(len(I), ()):
        raise EmptyQuotient(f"face {tuple(I)} is empty")
    return [tuple(int(j == i) for j in range(n)) for i in sorted(I)]


def vertex_cone_certificate(P: MomentPolytope, J: Sequence[int], v: Sequence[int]
                            ) -> tuple[Fraction, ...] | None:
    """Coefficients c_j with v = sum c_j e_j modulo the weight image, if all nonnegative."""
    W = P.system
    Jset = set(J)
    rest = [i for i in range(W.n) if i not in Jset]
    x = el.solve_linear(el.transpose([W.weights[i] for i in rest], ncols=W.k),
                        [v[i] for i in rest]) if rest else ()
    if x is None:
        return None
    c = tuple(v[j] - el.dot(W.weights[j], x) for j in sorted(J))
    return c if all(ci >= 0 for ci in c) else None


def vertex_cone_containing(P: MomentPolytope, v: Sequence[int]
                           ) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """A vertex J whose dual cone contains the class of v, with its certificate."""
    for J in P.vertices:
        c = vertex_cone_certificate(P, J, v)
        if c is not None:
            return J, c
    raise EmptyQuotient("no vertex cone contains the vector; the fan is not complete")


# ---------------------------------------------------------------------------
# freeness, Chern number, lattices of curve classes


def acts_freely(W: WeightSystem, tau: Iterable) -> bool:
    fp = chamber_fingerprint(W, tau)
    return all(el.det_abs_in_lattice([W.weights[i] for i in J]) == 1 for J in fp)


def minimal_chern_number(W: WeightSystem) -> int:
    g = 0
    for x in W.total_weight:
        g = gcd(g, x)
    return g


def _vanishing_divisors(W: WeightSystem, tau: Vector) -> tuple[int, ...]:
    return tuple(i for i in range(W.n) if not face_nonempty(W, tau, (i,)))


def _lambda_tau_basis(W: WeightSystem, tau: Vector) -> tuple[tuple[int, ...], ...]:
    rows = [W.weights[i] for i in _vanishing_divisors(W, tau)]
    if not rows:
        return el.identity(W.k)
    return el.integer_kernel_basis(rows, ncols=W.k)


def lambda_tau_sublattice(W: WeightSystem, tau: Iterable) -> tuple[tuple[int, ...], ...]:
    """Basis of the lattice of classes pairing to zero with every vanishing divisor."""
    tau = as_vector(tau)
    _require_regular(W, tau)
    if not acts_freely(W, tau):
        raise NotFree(f"the torus does not act freely at tau={_fmt(tau)}")
    return _lambda_tau_basis(W, tau)


def in_lambda_tau(W: WeightSystem, tau: Iterable, lam: Sequence[int]) -> bool:
    tau = as_vector(tau)
    return all(el.dot(W.weights[i], lam) == 0 for i in _vanishing_divisors(W, tau))


def lift_degree_vector(W: WeightSystem, tau: Iterable | None, d: Sequence[int]) -> tuple[int, ...]:
    """The unique lattice vector lambda with <w_nu, lambda> = d_nu for all nu."""
    if tau is not None and not acts_freely(W, tau):
        raise NotFree("lifting degree vectors needs a free action")
    if len(d) != W.n:
        raise NoLift(f"degree vector has length {len(d)}, expected {W.n}")
    cols = el.transpose(W.weights, ncols=W.k)
    lam = el.solve_linear(cols, d) if W.k else ()
    if lam is None or any(x.denominator != 1 for x in lam):
        raise NoLift(f"{tuple(d)} is not the degree vector of a lattice vector")
    lam = tuple(int(x) for x in lam)
    if W.degrees(lam) != tuple(d):
        raise NoLift(f"{tuple(d)} is not the degree vector of a lattice vector")
    return lam


# ---------------------------------------------------------------------------
# chambers and the effective cone


@dataclass(frozen=True)
class ChamberCell:
    signs: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...]

    def interior_point(self) -> tuple[int, ...]:
        return tuple(sum(r[i] for r in self.rays) for i in range(len(self.rays[0])))


@dataclass(frozen=True)
class EffectiveConeData:
    lambda_tau_basis: tuple[tuple[int, ...], ...]
    chamber_cells: tuple[ChamberCell, ...]
    eff_generators: tuple[tuple[int, ...], ...]
    chamber_rays: tuple[tuple[int, ...], ...]
    vanishing: tuple[int, ...]
    system: WeightSystem = field(repr=False)

    def contains(self, lam: Sequence[int]) -> bool:
        """Membership in Lambda_eff: a class in Lambda(tau) pairing nonnegatively with the chamber."""
        if any(el.dot(self.system.weights[i], lam) for i in self.vanishing):
            return False
        return all(el.dot(r, lam) >= 0 for r in self.chamber_rays)


def _candidate_rays(normals: Sequence[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    rays = set()
    for S in combinations(normals, k - 1):
        if el.rank(list(S)) != k - 1:
            continue
        (r,) = el.rational_kernel(list(S), k)
        r = el.primitive_integer_direction(r)
        rays.add(r)
        rays.add(tuple(-x for x in r))
    return sorted(rays)


def _generic_nearby(tau: Vector, normals: Sequence[tuple[int, ...]]) -> Vector:
    """A point in an open cell of the arrangement whose closure contains tau."""
    k = len(tau)
    base = 2 + max((abs(x) for n in normals for x in n), default=0)
    delta = tuple(Fraction(base) ** i for i in range(k))
    eps = Fraction(1)
    for n in normals:
        a = el.dot(n, tau)
        if a:
            eps = min(eps, abs(a) / (2 * abs(el.dot(n, delta))))
    return tuple(t + eps * d for t, d in zip(tau, delta))


def chamber_cells(W: WeightSystem, tau: Iterable) -> tuple[ChamberCell, ...]:
    """Closed cells of the wall-span arrangement making up the chamber of tau.

    Grown from the cell of tau by crossing facets whose relative interior is
    not part of a wall.  Exponential in the worst case; intended for small
    ranks.
    """
    tau = as_vector(tau)
    _require_regular(W, tau)
    walls = enumerate_walls(W)
    normals = [w.normal for w in walls]
    rays = _candidate_rays(normals, W.k)
    p = _generic_nearby(tau, normals)
    start = tuple(1 if el.dot(n, p) > 0 else -1 for n in normals)
    seen = {start}
    queue = [start]
    cells = []
    while queue:
        signs = queue.pop(0)
        cell_rays = tuple(r for r in rays if all(s * el.dot(r, n) >= 0 for s, n in zip(signs, normals)))
        cells.append(ChamberCell(signs, cell_rays))
        for h, wall in enumerate(walls):
            facet = [r for r in cell_rays if el.dot(r, wall.normal) == 0]
            if el.rank(facet) != W.k - 1:
                continue
            point = tuple(sum(r[i] for r in facet) for i in range(W.k))
            if cone_contains(W, wall.indices, point)[0]:
                continue
            nb = signs[:h] + (-signs[h],) + signs[h + 1:]
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    cells.sort(key=lambda c: c.signs, reverse=True)
    return tuple(cells)


def _dual_rays(inequalities: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {c in Q^dim : <a, c> >= 0 for all a}."""
    out = set()
    if dim == 0:
        return []
    for S in combinations(inequalities, dim - 1):
        if el.rank(list(S)) != dim - 1:
            continue
        (v,) = el.rational_kernel(list(S), dim)
        v = el.primitive_integer_direction(v)
        for cand in (v, tuple(-x for x in v)):
            if all(el.dot(a, cand) >= 0 for a in inequalities):
                out.add(cand)
    return sorted(out)


def effective_cone(W: WeightSystem, tau: Iterable) -> EffectiveConeData:
    tau = as_vector(tau)
    cells = chamber_cells(W, tau)
    chamber_rays = sorted({r for c in cells for r in c.rays})
    basis = _lambda_tau_basis(W, tau)
    pulled = [tuple(el.dot(r, b) for b in basis) for r in chamber_rays]
    gens = []
    for c in _dual_rays(pulled, len(basis)):
        gens.append(tuple(sum(ci * b[i] for ci, b in zip(c, basis)) for i in range(W.k)))
    gens.sort(reverse=True)
    return EffectiveConeData(basis, cells, tuple(gens), tuple(chamber_rays),
                             _vanishing_divisors(W, tau), W)
