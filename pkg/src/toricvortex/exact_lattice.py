"""Exact integer and rational linear algebra for small lattices.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
matrices are sequences of rows.  No floating point is used anywhere.

The Hermite normal form convention is fixed so that results are bit-exact:
column operations only, ``M @ U == H`` with ``H`` lower-triangular in column
echelon form, positive pivots, and every entry to the left of a pivot reduced
into ``[0, pivot)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch

IntMatrix = tuple[tuple[int, ...], ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _freeze(A) -> IntMatrix:
    return tuple(tuple(row) for row in A)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def lattice_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None
                        ) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Args:
      M: integer matrix given as rows.
      ncols: number of columns, only needed when ``M`` has no rows.

    Returns:
      ``(H, U)`` with ``U`` unimodular and ``M @ U == H``.  ``H`` is lower
      triangular: the pivot of each pivot column is positive, lies strictly
      below the pivot of the previous pivot column, and the entries of the
      pivot row left of the pivot are reduced modulo the pivot.  Columns of
      ``H`` past the rank are zero.
    """
    A = [[int(x) for x in row] for row in M]
    cols = len(A[0]) if A else (ncols or 0)
    if any(len(row) != cols for row in A):
        raise DimensionMismatch("ragged matrix")
    U = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def combine(p, q, x, y, s, t):
        # (col_p, col_q) <- (x col_p + y col_q, s col_p + t col_q), x t - y s = 1
        for mat in (A, U):
            for row in mat:
                cp, cq = row[p], row[q]
                row[p] = x * cp + y * cq
                row[q] = s * cp + t * cq

    piv = 0
    for i in range(len(A)):
        if piv == cols:
            break
        row = A[i]
        for j in range(piv + 1, cols):
            if row[j] == 0:
                continue
            a, b = row[piv], row[j]
            g, x, y = _xgcd(a, b)
            combine(piv, j, x, y, -b // g, a // g)
        if row[piv] == 0:
            continue
        if row[piv] < 0:
            for mat in (A, U):
                for r in mat:
                    r[piv] = -r[piv]
        p = row[piv]
        for j in range(piv):
            q = row[j] // p
            if q:
                for mat in (A, U):
                    for r in mat:
                        r[j] -= q * r[piv]
        piv += 1
    return _freeze(A), _freeze(U)


def rank_of_hnf(H: IntMatrix, ncols: int) -> int:
    return sum(1 for j in range(ncols) if any(row[j] for row in H))


def row_hermite_basis(vectors: Sequence[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of the lattice spanned by ``vectors`` (row HNF, zero rows dropped)."""
    if not vectors:
        return ()
    H, _ = lattice_normal_form(transpose(vectors), ncols=len(vectors))
    r = rank_of_hnf(H, len(vectors))
    return tuple(tuple(H[i][j] for i in range(dim)) for j in range(r))


def integer_kernel_basis(M: Sequence[Sequence[int]], ncols: int | None = None
                         ) -> tuple[tuple[int, ...], ...]:
    """Basis of the saturated integer kernel ``{v in Z^cols : M v = 0}``.

    The basis is returned in row Hermite normal form, so it is canonical.
    """
    cols = len(M[0]) if M else (ncols or 0)
    H, U = lattice_normal_form(M, ncols=cols)
    r = rank_of_hnf(H, cols)
    kernel = [tuple(U[i][j] for i in range(cols)) for j in range(r, cols)]
    return row_hermite_basis(kernel, cols)


def primitive_vector(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(int(x) // g for x in v)


def primitive_integer_direction(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector on the ray of a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive_vector([int(Fraction(x) * den) for x in v])


def determinant(A: Sequence[Sequence]) -> Fraction:
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def det_abs_in_lattice(vectors: Sequence[Sequence[int]]) -> int:
    """|det| of k covectors in Z^k, i.e. the index of the sublattice they span (0 if dependent)."""
    k = len(vectors)
    if any(len(v) != k for v in vectors):
        raise DimensionMismatch(f"need {k} covectors of length {k}")
    if k == 0:
        return 1
    return abs(int(determinant(vectors)))


def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return M, []
    cols = len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def solve_linear(columns: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``sum_i x_i columns[i] == target`` over Q.

    Returns one solution (free variables set to zero) or ``None``.
    """
    m = len(target)
    p = len(columns)
    aug = [[columns[i][r] for i in range(p)] + [target[r]] for r in range(m)]
    M, pivots = rref(aug)
    if p in pivots:
        return None
    x = [Fraction(0)] * p
    for row, c in zip(M, pivots):
        x[c] = row[p]
    return tuple(x)


def rational_kernel(M: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel of M (rows) from its RREF."""
    if not M:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def inverse_unimodular(B: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(B)
    aug = [list(B[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for row in R[:n]:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(x) for x in tail))
    return tuple(inv)


@dataclass(frozen=True)
class OrientedBasis:
    """Lattice basis ``vectors`` of Z^k; ``sign`` is its orientation relative to the standard one."""

    vectors: tuple[tuple[int, ...], ...]
    sign: int

    def matrix(self) -> IntMatrix:
        """Basis vectors as columns."""
        return transpose(self.vectors, ncols=len(self.vectors))


def complete_to_basis(e1: Sequence[int]) -> OrientedBasis:
    """Positively oriented basis of Z^k whose first vector is the primitive ``e1``."""
    k = len(e1)
    H, U = lattice_normal_form([e1])
    if H[0][0] != 1:
        raise ValueError(f"{tuple(e1)} is not primitive")
    V = inverse_unimodular(U)
    vectors = [tuple(V[0])] + [tuple(V[i]) for i in range(1, k)]
    if determinant(vectors) < 0:
        if k == 1:
            return OrientedBasis(tuple(vectors), -1)
        vectors[-1] = tuple(-x for x in vectors[-1])
    return OrientedBasis(tuple(vectors), 1)


def adapted_oriented_basis(spans: Sequence[Sequence[Sequence[int]]], k: int | None = None
                           ) -> OrientedBasis:
    """Integral basis adapted to a flag ``E_1 < E_2 < ... < E_k`` of covector spans.

    ``spans[j]`` generates ``E_{j+1}``; the last member may be omitted (it is
    the whole dual space).  The result ``e_1, ..., e_k`` is a positively
    oriented basis of Z^k such that ``e_j, ..., e_k`` annihilate ``E_{j-1}``.

    The residual freedom ``e_j -> +-e_j + sum_{i>j} a_ij e_i`` is fixed by
    taking the columns of the unimodular matrix from the column Hermite form
    of the matrix whose j-th row is the first generator of ``E_j`` not already
    in ``E_{j-1}``; a negative determinant is repaired by negating ``e_1``.
    """
    spans = [list(s) for s in spans]
    if k is None:
        k = len(spans[0][0]) if spans and spans[0] else len(spans)
    if len(spans) not in (k, k - 1):
        raise DimensionMismatch(f"flag of length {len(spans)} for rank {k}")
    if len(spans) == k - 1:
        spans.append([tuple(int(i == j) for j in range(k)) for i in range(k)])
    rows: list[tuple[int, ...]] = []
    for j, gens in enumerate(spans, start=1):
        if rank(gens) != j or (rows and rank(rows + list(gens)) != j):
            raise DimensionMismatch(f"E_{j} must have dimension {j} and contain E_{j - 1}")
        new = next(g for g in gens if rank(rows + [g]) == j)
        rows.append(tuple(int(x) for x in new))
    if k == 0:
        return OrientedBasis((), 1)
    _, U = lattice_normal_form(rows)
    vectors = [tuple(U[i][j] for i in range(k)) for j in range(k)]
    if determinant(vectors) < 0:
        vectors[0] = tuple(-x for x in vectors[0])
    return OrientedBasis(tuple(vectors), 1)
