"""
Elements of O(q,k)

Isometries, transvections, the basic null and radical generators, residual spaces,
and brute-force enumeration of O(q,k) (or of the B-isometry group) over small finite
fields, which serves as the ground-truth oracle for every structural statement.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .config import get_settings
from .errors import BudgetExceeded, FormError, NotAnIsometry, StructureError
from .field import Element, Field
from .linalg import Matrix, Subspace, Vector
from .models import IsometryReport
from .quadspace import QuadForm, arf_invariant, is_nonsingular, projective_points, radical

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Isometry:
    """An invertible matrix preserving q (or only B when symplectic is set)."""

    form: QuadForm
    matrix: Matrix
    symplectic: bool = False

    @property
    def field(self) -> Field:
        return self.form.field

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, w: Sequence) -> Vector:
        return linalg.apply(self.field, self.matrix, w)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        return Isometry(self.form, linalg.matmul(self.field, self.matrix, other.matrix),
                        self.symplectic or other.symplectic)

    def inverse(self) -> "Isometry":
        return Isometry(self.form, linalg.inverse(self.field, self.matrix), self.symplectic)

    def conjugate_by(self, g: "Isometry") -> "Isometry":
        """g self g^-1"""
        return g.compose(self).compose(g.inverse())

    @property
    def is_identity(self) -> bool:
        return linalg.is_identity(self.field, self.matrix)

    @property
    def is_involution(self) -> bool:
        return not self.is_identity and self.compose(self).is_identity

    def to_report(self) -> IsometryReport:
        return IsometryReport(field=self.field.name, dimension=self.dim, rows=matrix_codes(self.field, self.matrix))


def matrix_codes(f: Field, M: Matrix) -> List[List]:
    return [[f.code(x) for x in row] for row in linalg.to_rows(M)]


def preserves_bilinear(q: QuadForm, M: Matrix) -> bool:
    n = q.dim
    if len(M) != n or any(len(col) != n for col in M):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if q.bilinear(M[i], M[j]) != q.coeffs[i][j]:
                return False
    return linalg.is_invertible(q.field, M) if n else True


def isometry_witness(q: QuadForm, M: Matrix) -> Optional[Vector]:
    """A basis vector or pairwise sum whose norm M changes, or None."""
    f = q.field
    n = q.dim
    for i in range(n):
        if q.eval(M[i]) != q.coeffs[i][i]:
            return linalg.unit(f, n, i)
    for i in range(n):
        for j in range(i + 1, n):
            if q.bilinear(M[i], M[j]) != q.coeffs[i][j]:
                return linalg.vadd(f, linalg.unit(f, n, i), linalg.unit(f, n, j))
    return None


def is_isometry(q: QuadForm, M: Matrix) -> bool:
    n = q.dim
    if len(M) != n or any(len(col) != n for col in M):
        return False
    if n and not linalg.is_invertible(q.field, M):
        return False
    return isometry_witness(q, M) is None


def make_isometry(q: QuadForm, M: Matrix) -> Isometry:
    if not is_isometry(q, M):
        raise NotAnIsometry("matrix does not preserve q", isometry_witness(q, M))
    return Isometry(q, tuple(tuple(c) for c in M))


# transvections

def transvection(q: QuadForm, w: Sequence, a: Element) -> Isometry:
    """z -> z + a B(w, z) w; flagged symplectic when it preserves only B."""
    f = q.field
    n = q.dim
    cols = []
    for j in range(n):
        e = linalg.unit(f, n, j)
        c = f.mul(a, q.bilinear(w, e))
        cols.append(linalg.vadd(f, e, linalg.vscale(f, c, w)) if c != f.zero else e)
    M = tuple(cols)
    return Isometry(q, M, symplectic=not is_isometry(q, M))


def orthogonal_transvection(q: QuadForm, w: Sequence) -> Isometry:
    f = q.field
    norm = q.eval(w)
    if norm == f.zero:
        raise FormError("orthogonal transvection needs q(w) != 0")
    return transvection(q, w, f.inv(norm))


def product_of_transvections(q: QuadForm, vectors: Sequence[Sequence]) -> Isometry:
    ret = identity(q)
    for w in vectors:
        ret = ret.compose(orthogonal_transvection(q, w))
    return ret


def identity(q: QuadForm) -> Isometry:
    return Isometry(q, linalg.identity(q.field, q.dim))


# null and radical generators

def basic_null(q: QuadForm, x1: Sequence, y1: Sequence, x2: Sequence, y2: Sequence) -> Isometry:
    """z -> z + B(z, x1) x2 + B(z, x2) x1 on H _|_ H spanned by (x1, y1), (x2, y2)."""
    f = q.field
    vecs = [tuple(v) for v in (x1, y1, x2, y2)]
    if any(q.eval(v) != f.zero for v in vecs):
        raise FormError("plane vectors must be isotropic")
    pairs_ok = q.bilinear(vecs[0], vecs[1]) == f.one and q.bilinear(vecs[2], vecs[3]) == f.one
    cross_ok = all(q.bilinear(a, b) == f.zero for a in vecs[:2] for b in vecs[2:])
    if not (pairs_ok and cross_ok):
        raise FormError("the planes are not an orthogonal sum of two hyperbolic planes")
    x1, _, x2, _ = vecs
    n = q.dim
    cols = []
    for j in range(n):
        e = linalg.unit(f, n, j)
        z = linalg.vadd(f, e, linalg.vscale(f, q.bilinear(e, x1), x2))
        z = linalg.vadd(f, z, linalg.vscale(f, q.bilinear(e, x2), x1))
        cols.append(z)
    return make_isometry(q, tuple(cols))


def basic_null_on_pairs(q: QuadForm, i: int, j: int) -> Isometry:
    """Canonical basic null on signature pairs i and j (0-based)."""
    if q.signature is None or not (0 <= i < q.r and 0 <= j < q.r) or i == j:
        raise FormError("null(i, j) needs two distinct signature pairs")
    e = q.basis_vector
    return basic_null(q, e(2 * i), e(2 * i + 1), e(2 * j), e(2 * j + 1))


def basic_radical(q: QuadForm, g: Sequence, g2: Sequence) -> Isometry:
    """Swap g and g2 inside rad(W), fixing a greedy complement of their span."""
    f = q.field
    rad = radical(q)
    g, g2 = tuple(g), tuple(g2)
    if not (rad.contains(f, g) and rad.contains(f, g2)):
        raise FormError("radical swap needs vectors in rad(W)")
    if linalg.rank(f, [g, g2]) != 2:
        raise FormError("radical swap needs independent vectors")
    if q.eval(g) != q.eval(g2):
        raise FormError("radical swap needs equal norms")
    P = tuple([g, g2] + linalg.complement(f, [g, g2], q.dim))
    swapped = (P[1], P[0]) + P[2:]
    M = linalg.matmul(f, swapped, linalg.inverse(f, P))
    return make_isometry(q, M)


def residual_space(phi: Isometry) -> Subspace:
    f = phi.field
    shifted = linalg.madd(f, phi.matrix, linalg.identity(f, phi.dim))
    return Subspace(phi.dim, tuple(linalg.column_space(f, shifted)))


def residue(phi: Isometry) -> int:
    return residual_space(phi).dim


def fixed_space(phi: Isometry) -> Subspace:
    f = phi.field
    shifted = linalg.madd(f, phi.matrix, linalg.identity(f, phi.dim))
    return Subspace.span(f, phi.dim, linalg.kernel(f, shifted))


# enumeration

@dataclass
class GroupTable:
    form: QuadForm
    elements: Tuple[Matrix, ...]
    index: Dict[Matrix, int] = dc_field(default_factory=dict)
    symplectic: bool = False

    def __post_init__(self):
        if not self.index:
            self.index = {M: i for i, M in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, M) -> bool:
        if isinstance(M, Isometry):
            M = M.matrix
        return M in self.index

    def __iter__(self) -> Iterator[Isometry]:
        return (self.isometry(i) for i in range(self.order))

    def position(self, M) -> int:
        if isinstance(M, Isometry):
            M = M.matrix
        try:
            return self.index[M]
        except KeyError:
            raise StructureError("element is not in the table") from None

    def isometry(self, i: int) -> Isometry:
        return Isometry(self.form, self.elements[i], self.symplectic)

    @cached_property
    def inverses(self) -> Tuple[Matrix, ...]:
        f = self.form.field
        return tuple(linalg.inverse(f, M) if M else M for M in self.elements)

    def conjugate(self, i: int, M: Matrix) -> Matrix:
        """g M g^-1 for the i-th element g."""
        f = self.form.field
        return linalg.matmul(f, linalg.matmul(f, self.elements[i], M), self.inverses[i])

    def export_lines(self) -> str:
        f = self.form.field
        lines = []
        for M in self.elements:
            lines.append(";".join(",".join(str(f.code(x)) for x in row) for row in linalg.to_rows(M)))
        return "\n".join(lines)


def _vectors_by_norm(q: QuadForm, symplectic: bool) -> Dict[Element, List[Vector]]:
    f = q.field
    elems = f.enumerate()
    buckets: Dict[Element, List[Vector]] = {}
    for v in projective_points(f, q.dim):
        for c in elems[1:]:
            w = linalg.vscale(f, c, v)
            key = f.zero if symplectic else q.eval(w)
            buckets.setdefault(key, []).append(w)
    for vs in buckets.values():
        vs.sort()
    return buckets


def _reduce(f: Field, rows: List[Tuple[int, Vector]], v: Vector) -> Vector:
    for p, row in rows:
        c = v[p]
        if c != f.zero:
            v = linalg.vadd(f, v, linalg.vscale(f, c, row))
    return v


def _first_nonzero(f: Field, v: Vector) -> int:
    return next(i for i, x in enumerate(v) if x != f.zero)


def _backtrack(q: QuadForm, symplectic: bool, prefix: Tuple[Vector, ...], limit: int) -> List[Matrix]:
    f = q.field
    n = q.dim
    buckets = _vectors_by_norm(q, symplectic)
    out: List[Matrix] = []

    def echelon_of(images):
        rows: List[Tuple[int, Vector]] = []
        for v in images:
            v = _reduce(f, rows, v)
            p = _first_nonzero(f, v)
            v = linalg.vscale(f, f.inv(v[p]), v)
            rows = [(pp, linalg.vadd(f, r, linalg.vscale(f, r[p], v)) if r[p] != f.zero else r) for pp, r in rows]
            rows.append((p, v))
        return rows

    def extend(images: List[Vector], rows: List[Tuple[int, Vector]]):
        j = len(images)
        if j == n:
            out.append(tuple(images))
            if len(out) > limit:
                raise BudgetExceeded(f"group order exceeds {limit}")
            return
        key = f.zero if symplectic else q.coeffs[j][j]
        for v in buckets.get(key, []):
            if any(q.bilinear(images[i], v) != q.coeffs[i][j] for i in range(j)):
                continue
            red = _reduce(f, rows, v)
            if linalg.is_zero(f, red):
                continue
            p = _first_nonzero(f, red)
            red = linalg.vscale(f, f.inv(red[p]), red)
            new_rows = [(pp, linalg.vadd(f, r, linalg.vscale(f, r[p], red)) if r[p] != f.zero else r) for pp, r in rows]
            new_rows.append((p, red))
            extend(images + [v], new_rows)

    extend(list(prefix), echelon_of(prefix))
    return out


def _branch_worker(args) -> List[Matrix]:
    q, symplectic, first, limit = args
    return _backtrack(q, symplectic, (first,), limit)


def enumerate_group(q: QuadForm, symplectic: bool = False, budget_bits: Optional[int] = None,
                    jobs: Optional[int] = None) -> GroupTable:
    """All of O(q,k) (or all B-isometries when symplectic) by backtracking on basis images."""
    f = q.field
    settings = get_settings()
    budget_bits = budget_bits if budget_bits is not None else settings.budget_bits
    jobs = jobs if jobs is not None else settings.jobs
    if not f.is_finite:
        raise BudgetExceeded("enumeration needs a finite field")
    bits = q.dim * f.m
    if bits > budget_bits:
        raise BudgetExceeded(f"n*log2|k| = {bits} exceeds the budget {budget_bits}")
    limit = settings.max_group_order
    if q.dim == 0:
        elements: List[Matrix] = [()]
    elif jobs > 1:
        key = f.zero if symplectic else q.coeffs[0][0]
        firsts = _vectors_by_norm(q, symplectic).get(key, [])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_branch_worker, [(q, symplectic, v, limit) for v in firsts])
            elements = [M for part in parts for M in part]
        if len(elements) > limit:
            raise BudgetExceeded(f"group order exceeds {limit}")
    else:
        elements = _backtrack(q, symplectic, (), limit)
    elements.sort()
    table = GroupTable(q, tuple(elements), symplectic=symplectic)
    logger.info(f"Enumerated {'Sp' if symplectic else 'O'}({q.format()}, {f.name}): order {table.order}")
    return table


def involutions_of(table: GroupTable) -> List[Isometry]:
    return [phi for phi in table if phi.is_involution]


def stabilizer(table: GroupTable, basis: Sequence[Sequence]) -> List[Isometry]:
    """Elements mapping span(basis) onto itself."""
    f = table.form.field
    S = Subspace.span(f, table.form.dim, basis)
    return [g for g in table if all(S.contains(f, g(b)) for b in S.basis)]


def order_formula(q: QuadForm) -> int:
    """Classical order of O(q) for a nonsingular form over a finite field."""
    f = q.field
    if not is_nonsingular(q):
        raise StructureError("order formula needs a nonsingular form")
    n = q.dim // 2
    if n == 0:
        return 1
    Q = f.order
    eps = 1 if arf_invariant(q) == f.zero else -1
    order = 2 * Q ** (n * (n - 1)) * (Q ** n - eps)
    for i in range(1, n):
        order *= Q ** (2 * i) - 1
    return order
