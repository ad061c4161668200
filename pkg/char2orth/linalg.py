"""
Exact linear algebra over the supported fields

Vectors are tuples of field elements. Matrices are stored column-major as a tuple of
column tuples, so ``M[j]`` is the image of the j-th basis vector. Every function
takes the field as its first argument.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, SingularMatrix

if TYPE_CHECKING:
    from .field import Element, Field

Vector = Tuple
Matrix = Tuple[Tuple, ...]


# vectors

def zero_vector(f: "Field", n: int) -> Vector:
    return (f.zero,) * n


def unit(f: "Field", n: int, i: int) -> Vector:
    return tuple(f.one if j == i else f.zero for j in range(n))


def is_zero(f: "Field", v: Sequence) -> bool:
    return all(x == f.zero for x in v)


def vadd(f: "Field", u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(f.add(a, b) for a, b in zip(u, v))


def vscale(f: "Field", a: "Element", v: Sequence) -> Vector:
    if a == f.one:
        return tuple(v)
    return tuple(f.mul(a, x) for x in v)


def combine(f: "Field", coeffs: Sequence, vectors: Sequence[Sequence], n: Optional[int] = None) -> Vector:
    """Linear combination sum coeffs[i] * vectors[i]."""
    if n is None:
        n = len(vectors[0])
    ret = zero_vector(f, n)
    for c, v in zip(coeffs, vectors):
        if c != f.zero:
            ret = vadd(f, ret, vscale(f, c, v))
    return ret


def dot(f: "Field", u: Sequence, v: Sequence) -> "Element":
    return f.sum(f.mul(a, b) for a, b in zip(u, v))


# matrices

def identity(f: "Field", n: int) -> Matrix:
    return tuple(unit(f, n, j) for j in range(n))


def zero_matrix(f: "Field", rows: int, cols: int) -> Matrix:
    return tuple(zero_vector(f, rows) for _ in range(cols))


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    if not rows:
        return ()
    return tuple(tuple(row[j] for row in rows) for j in range(len(rows[0])))


def to_rows(M: Matrix, n_rows: Optional[int] = None) -> List[Vector]:
    if not M:
        return [()] * (n_rows or 0)
    return [tuple(col[i] for col in M) for i in range(len(M[0]))]


def transpose(M: Matrix) -> Matrix:
    return tuple(to_rows(M))


def apply(f: "Field", M: Matrix, v: Sequence) -> Vector:
    if len(M) != len(v):
        raise DimensionMismatch(f"matrix with {len(M)} columns applied to vector of length {len(v)}")
    n = len(M[0]) if M else 0
    return combine(f, v, M, n)


def matmul(f: "Field", A: Matrix, B: Matrix) -> Matrix:
    return tuple(apply(f, A, col) for col in B)


def madd(f: "Field", A: Matrix, B: Matrix) -> Matrix:
    return tuple(vadd(f, a, b) for a, b in zip(A, B))


def mscale(f: "Field", a: "Element", M: Matrix) -> Matrix:
    return tuple(vscale(f, a, col) for col in M)


def is_identity(f: "Field", M: Matrix) -> bool:
    return M == identity(f, len(M))


# elimination

def echelon(f: "Field", rows: Sequence[Sequence]) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon form of the given rows.

    Pivots are chosen as the first nonzero entry scanning columns left to right,
    so the result is canonical for the row space. Zero rows are dropped.
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    n_cols = len(work[0])
    pivots: List[int] = []
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if work[r][col] != f.zero:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        lead = work[row_idx][col]
        if lead != f.one:
            inv = f.inv(lead)
            work[row_idx] = [f.mul(inv, x) for x in work[row_idx]]
        for r in range(len(work)):
            if r != row_idx and work[r][col] != f.zero:
                c = work[r][col]
                work[r] = [f.add(x, f.mul(c, y)) for x, y in zip(work[r], work[row_idx])]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    return [tuple(r) for r in work[:row_idx]], pivots


def rank(f: "Field", rows: Sequence[Sequence]) -> int:
    return len(echelon(f, rows)[1])


def kernel(f: "Field", M: Matrix) -> List[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column."""
    n = len(M)
    if n == 0:
        return []
    reduced, pivots = echelon(f, to_rows(M))
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        x = [f.zero] * n
        x[j] = f.one
        for row, p in zip(reduced, pivots):
            x[p] = row[j]
        basis.append(tuple(x))
    return basis


def solve(f: "Field", M: Matrix, b: Sequence) -> Optional[Vector]:
    """One solution x of Mx = b, or None."""
    n = len(M)
    rows = to_rows(M) if M else [() for _ in b]
    augmented = [tuple(r) + (bi,) for r, bi in zip(rows, b)]
    if not augmented:
        return zero_vector(f, n)
    reduced, pivots = echelon(f, augmented)
    if n in pivots:
        return None
    x = [f.zero] * n
    for row, p in zip(reduced, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(f: "Field", M: Matrix) -> Matrix:
    n = len(M)
    rows = to_rows(M)
    augmented = [tuple(r) + unit(f, n, i) for i, r in enumerate(rows)]
    reduced, pivots = echelon(f, augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is not invertible")
    return from_rows([row[n:] for row in reduced])


def is_invertible(f: "Field", M: Matrix) -> bool:
    return rank(f, M) == len(M)


def random_invertible(f: "Field", n: int, rng: random.Random) -> Matrix:
    while True:
        M = tuple(tuple(f.random_element(rng) for _ in range(n)) for _ in range(n))
        if is_invertible(f, M):
            return M


# spans

def in_span(f: "Field", basis: Sequence[Sequence], v: Sequence) -> bool:
    if is_zero(f, v):
        return True
    if not basis:
        return False
    return rank(f, list(basis) + [v]) == rank(f, basis)


def coordinates(f: "Field", basis: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """Coefficients c with sum c_i basis_i = v, or None when v is outside the span."""
    if not basis:
        return () if is_zero(f, v) else None
    return solve(f, tuple(tuple(b) for b in basis), v)


def column_space(f: "Field", M: Matrix) -> List[Vector]:
    return echelon(f, M)[0]


def complement(f: "Field", basis: Sequence[Sequence], n: int) -> List[Vector]:
    """Standard basis vectors completing basis to a basis of k^n, chosen greedily."""
    current = list(basis)
    ret = []
    r = rank(f, current) if current else 0
    for i in range(n):
        if r == n:
            break
        e = unit(f, n, i)
        candidate = current + [e]
        r2 = rank(f, candidate)
        if r2 > r:
            current, r = candidate, r2
            ret.append(e)
    return ret


def extend_to_basis(f: "Field", basis: Sequence[Sequence], n: int) -> List[Vector]:
    return list(basis) + complement(f, basis, n)


def intersection(f: "Field", A: Sequence[Sequence], B: Sequence[Sequence]) -> List[Vector]:
    """Echelon basis of span(A) and span(B) intersected."""
    if not A or not B:
        return []
    n = len(A[0])
    cols = tuple(tuple(a) for a in A) + tuple(tuple(b) for b in B)
    vectors = [combine(f, z[:len(A)], A, n) for z in kernel(f, cols)]
    return echelon(f, vectors)[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^n held by its canonical echelon basis."""

    n: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, f: "Field", n: int, vectors: Sequence[Sequence]) -> "Subspace":
        return cls(n, tuple(echelon(f, vectors)[0]) if vectors else ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: "Field", v: Sequence) -> bool:
        return in_span(f, self.basis, v)

    def contains_subspace(self, f: "Field", other: "Subspace") -> bool:
        return all(self.contains(f, v) for v in other.basis)
