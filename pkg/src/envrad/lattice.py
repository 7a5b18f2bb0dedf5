"""Exact integer lattice arithmetic.

Matrices are plain nested tuples of Python ints (row-major), vectors are
tuples.  Module elements are row vectors and linear maps act by right
multiplication, so ``x @ A`` is written ``vec_mat(x, A)`` throughout.

Every lattice is stored in canonical row Hermite normal form: full row rank,
echelon shape, positive pivots, and entries above each pivot reduced into
``[0, pivot)``.  Two lattices are equal as sets iff their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vec = tuple[int, ...]
IntMat = tuple[Vec, ...]


def as_mat(rows: Iterable[Iterable[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> IntMat:
    return tuple((0,) * c for _ in range(r))


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]]) -> Vec:
    if not m:
        return ()
    ncols = len(m[0])
    out = [0] * ncols
    for x, row in zip(v, m):
        if x:
            for j in range(ncols):
                out[j] += x * row[j]
    return tuple(out)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMat:
    return tuple(vec_mat(row, b) for row in a)


def mat_add(a, b) -> IntMat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: int, a) -> IntMat:
    return tuple(tuple(c * x for x in r) for r in a)


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    if not a:
        return zeros(ncols or 0, 0)
    return tuple(zip(*a))


def mat_pow(a: IntMat, k: int) -> IntMat:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def _hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> IntMat:
    A = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r][c]
            pivot_row = A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // piv
                    row = A[i]
                    A[i] = [x - q * y for x, y in zip(row, pivot_row)]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c]:
            piv = A[r][c]
            for i in range(r):
                q = A[i][c] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
            # drop rows that became zero
            A = A[:r] + [row for row in A[r:] if any(row)]
    return tuple(tuple(row) for row in A[:r])


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^n held in canonical Hermite form."""

    ambient_rank: int
    basis: IntMat

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def index(self) -> int | None:
        """Index in Z^n, or None when the lattice has lower rank."""
        if not self.is_full_rank():
            return None
        out = 1
        for i, row in enumerate(self.basis):
            out *= row[i]
        return out

    def is_whole(self) -> bool:
        return self.index() == 1

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __le__(self, other: "IntLattice") -> bool:
        return all(member(other, row) for row in self.basis)

    def __lt__(self, other: "IntLattice") -> bool:
        return self <= other and self != other

    def __add__(self, other: "IntLattice") -> "IntLattice":
        return lattice_combine("sum", self, other)

    def __and__(self, other: "IntLattice") -> "IntLattice":
        return lattice_combine("intersect", self, other)

    def reduce(self, v: Sequence[int]) -> Vec:
        """Canonical coset representative of ``v`` modulo the lattice."""
        if len(v) != self.ambient_rank:
            raise DimensionMismatch(f"vector of length {len(v)} in rank {self.ambient_rank}")
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            q = w[p] // row[p]
            if q:
                for j in range(p, len(w)):
                    w[j] -= q * row[j]
        return tuple(w)

    def coordinates(self, v: Sequence[int]) -> Vec | None:
        """Integer coefficients of ``v`` in the basis, or None if v is outside."""
        w = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            q, r = divmod(w[p], row[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                for j in range(p, len(w)):
                    w[j] -= q * row[j]
        if any(w):
            return None
        return tuple(coeffs)


def hnf_basis(m: Iterable[Sequence[int]], ambient_rank: int | None = None) -> IntLattice:
    rows = [tuple(int(x) for x in r) for r in m]
    if ambient_rank is None:
        if not rows:
            raise DimensionMismatch("ambient rank needed for an empty matrix")
        ambient_rank = len(rows[0])
    for r in rows:
        if len(r) != ambient_rank:
            raise DimensionMismatch(f"row of length {len(r)} in rank {ambient_rank}")
    return IntLattice(ambient_rank, _hnf_rows(rows, ambient_rank))


def zero_lattice(n: int) -> IntLattice:
    return IntLattice(n, ())


def whole_lattice(n: int) -> IntLattice:
    return IntLattice(n, identity(n))


def member(lat: IntLattice, v: Sequence[int]) -> bool:
    return not any(lat.reduce(v))


def lattice_combine(op: str, a: IntLattice, b: IntLattice) -> IntLattice:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch(f"ambient ranks {a.ambient_rank} and {b.ambient_rank}")
    n = a.ambient_rank
    if op == "sum":
        return hnf_basis(a.basis + b.basis, n)
    if op != "intersect":
        raise ValueError(f"unknown lattice operation {op!r}")
    if a.is_zero() or b.is_zero():
        return zero_lattice(n)
    # Zassenhaus: rows (x, x) for x in a and (y, 0) for y in b
    rows = [r + r for r in a.basis] + [r + (0,) * n for r in b.basis]
    h = _hnf_rows(rows, 2 * n)
    return hnf_basis([r[n:] for r in h if not any(r[:n])], n)


def solve_mod_lattice(a: Sequence[Sequence[int]], target: IntLattice) -> IntLattice:
    """The lattice ``{x : x·a ∈ target}`` in Z^rows(a)."""
    r = len(a)
    n = target.ambient_rank
    if r and len(a[0]) != n:
        raise DimensionMismatch(f"map has {len(a[0])} columns, target rank {n}")
    rows = [tuple(a[i]) + tuple(int(i == j) for j in range(r)) for i in range(r)]
    rows += [t + (0,) * r for t in target.basis]
    h = _hnf_rows(rows, n + r)
    return hnf_basis([row[n:] for row in h if not any(row[:n])], r)


def left_kernel(a: Sequence[Sequence[int]], ncols: int) -> IntLattice:
    return solve_mod_lattice(a, zero_lattice(ncols))


def right_kernel_matrix(a: Sequence[Sequence[int]], ncols: int) -> IntMat:
    """Columns spanning ``{y : a·y = 0}``, returned as an ncols × k matrix."""
    k = left_kernel(transpose(a), len(a)) if a else whole_lattice(ncols)
    return transpose(k.basis) if k.basis else zeros(ncols, 0)


def row_rank(a: Sequence[Sequence[int]], ncols: int) -> int:
    return len(_hnf_rows(a, ncols))


def saturation(lat: IntLattice) -> IntLattice:
    """``(lat ⊗ Q) ∩ Z^n``."""
    n = lat.ambient_rank
    if lat.is_zero():
        return zero_lattice(n)
    k = right_kernel_matrix(lat.basis, n)
    if not k[0]:
        return whole_lattice(n)
    return left_kernel(k, len(k[0]))


# -- Smith normal form --------------------------------------------------------

def _snf(m: Sequence[Sequence[int]], nrows: int, ncols: int):
    A = [list(r) for r in m]
    L = [list(r) for r in identity(nrows)]
    R = [list(r) for r in identity(ncols)]
    Rinv = [list(r) for r in identity(ncols)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def row_addmul(dst, src, q):  # row dst -= q * row src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x - q * y for x, y in zip(L[dst], L[src])]

    def col_swap(i, j):
        for M in (A, R):
            for row in M:
                row[i], row[j] = row[j], row[i]
        Rinv[i], Rinv[j] = Rinv[j], Rinv[i]

    def col_addmul(dst, src, q):  # col dst -= q * col src
        for M in (A, R):
            for row in M:
                row[dst] -= q * row[src]
        # inverse: row src += q * row dst
        Rinv[src] = [x + q * y for x, y in zip(Rinv[src], Rinv[dst])]

    t = 0
    while t < min(nrows, ncols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if A[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        row_swap(t, i0)
        col_swap(t, j0)
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    row_addmul(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        row_swap(t, i)
                        changed = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    col_addmul(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        col_swap(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        t += 1
    diag = [A[i][i] for i in range(min(nrows, ncols))]
    return diag, as_mat(L), as_mat(R), as_mat(Rinv)


def snf_decompose(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith form: returns ``(diag, left, right)`` with left·m·right diagonal."""
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    diag, L, R, _ = _snf(m, nrows, ncols)
    return diag, L, R


def snf_full(m: Sequence[Sequence[int]], ncols: int):
    """Like :func:`snf_decompose` but also returns the inverse of ``right``."""
    return _snf(m, len(m), ncols)


def invariant_factors_of(lat: IntLattice) -> tuple[int, ...]:
    """Invariant factors of Z^n / lat, dropping 1s; zeros mark free rank."""
    diag, _, _ = snf_decompose(lat.basis, lat.ambient_rank) if lat.basis else ([], None, None)
    out = [d for d in diag if d != 1]
    out += [0] * (lat.ambient_rank - lat.rank)
    return tuple(out)


def inverse_unimodular(u: Sequence[Sequence[int]]) -> IntMat:
    n = len(u)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c])
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)
