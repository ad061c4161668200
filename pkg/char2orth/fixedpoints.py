"""
Fixed-point groups of involution conjugation

The centralizer of an involution inside an enumerated O(q,k), and the structural
description of that centralizer in two cases: radical involutions of a totally
singular space, and diagonal involutions of a nonsingular space, where every fixed
element factors as P X C. Each factor group is enumerated on its own so that the
predicted order can be compared with the centralizer order.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from . import linalg
from .config import get_settings
from .errors import BudgetExceeded, FormError, StructureError, Undecidable
from .field import Field
from .involutions import InvolutionDescriptor, Triple, classify, residual_beta
from .linalg import Matrix, Subspace, Vector
from .models import FixedStructureReport, InvolutionKind
from .orthogroup import GroupTable, Isometry, enumerate_group, fixed_space, is_isometry
from .quadspace import (
    QuadForm,
    greedy_extension,
    is_nonsingular,
    is_totally_singular,
    nonsingular_completion,
    restrict,
    semilinear_kernel,
    symplectic_basis,
)

logger = logging.getLogger(__name__)


def _block(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(M[j][i] for i in rows) for j in cols)


def _commutes(f: Field, A: Matrix, B: Matrix) -> bool:
    return linalg.matmul(f, A, B) == linalg.matmul(f, B, A)


def _is_zero_block(f: Field, M: Matrix) -> bool:
    return all(x == f.zero for col in M for x in col)


def _require_finite(f: Field, what: str) -> None:
    if not f.is_finite:
        raise BudgetExceeded(f"{what} needs a finite field")


def _check_budget(count: int, what: str) -> None:
    limit = get_settings().search_limit
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} candidates exceed the search limit {limit}")


# centralizers

@dataclass
class FixedPointGroup:
    """The elements of an enumerated group that commute with an involution."""

    table: GroupTable
    involution: Isometry

    @property
    def order(self) -> int:
        return self.table.order

    def __contains__(self, g) -> bool:
        return g in self.table

    def __iter__(self) -> Iterator[Isometry]:
        return iter(self.table)

    def violations(self) -> List[str]:
        f = self.involution.field
        phi = self.involution.matrix
        ret = [f"element {i} does not commute with the involution"
               for i, M in enumerate(self.table.elements) if not _commutes(f, M, phi)]
        for M in self.table.elements:
            for N in self.table.elements:
                if linalg.matmul(f, M, N) not in self.table.index:
                    ret.append("not closed under composition")
                    return ret
        return ret


def centralizer(table: GroupTable, phi: Isometry) -> FixedPointGroup:
    table.position(phi)
    f = table.form.field
    elements = tuple(M for M in table.elements if _commutes(f, M, phi.matrix))
    logger.debug(f"Centralizer of order {len(elements)} in a group of order {table.order}")
    return FixedPointGroup(GroupTable(table.form, elements, symplectic=table.symplectic), phi)


# the A-group and the semidirect law

def star_map(f: Field, phi_u: Matrix) -> Matrix:
    """(phi_U^-1)^T, the action on V forced by the pairing B(u_i, v_j) = delta_ij."""
    return linalg.transpose(linalg.inverse(f, phi_u))


def conjugation_action(f: Field, phi_u: Matrix, A: Matrix) -> Matrix:
    """phi_U A phi_U^T, which is phi_U A (phi_U^*)^-1."""
    return linalg.matmul(f, phi_u, linalg.matmul(f, A, linalg.transpose(phi_u)))


def semidirect_matrix(f: Field, phi_u: Matrix, A: Matrix) -> Matrix:
    """[[phi_U, phi_U A], [0, phi_U^*]] on U + V."""
    l = len(phi_u)
    upper = linalg.matmul(f, phi_u, A)
    star = star_map(f, phi_u)
    cols = [tuple(phi_u[j]) + (f.zero,) * l for j in range(l)]
    cols += [tuple(upper[j]) + tuple(star[j]) for j in range(l)]
    return tuple(cols)


def product_law_check(f: Field, phi_u: Matrix, A: Matrix, theta_u: Matrix, C: Matrix) -> Tuple[Matrix, Matrix]:
    """Both sides of (phi_U, A)(theta_U, C) = (phi_U theta_U, theta_U^-1 A theta_U^* + C)."""
    lhs = linalg.matmul(f, semidirect_matrix(f, phi_u, A), semidirect_matrix(f, theta_u, C))
    moved = linalg.matmul(f, linalg.inverse(f, theta_u), linalg.matmul(f, A, star_map(f, theta_u)))
    rhs = semidirect_matrix(f, linalg.matmul(f, phi_u, theta_u), linalg.madd(f, moved, C))
    return lhs, rhs


def inverse_law_check(f: Field, phi_u: Matrix, A: Matrix) -> Tuple[Matrix, Matrix]:
    """Both sides of (phi_U, A)^-1 = (phi_U^-1, phi_U A phi_U^-*)."""
    lhs = linalg.inverse(f, semidirect_matrix(f, phi_u, A))
    rhs = semidirect_matrix(f, linalg.inverse(f, phi_u), conjugation_action(f, phi_u, A))
    return lhs, rhs


@dataclass(frozen=True)
class AGroup:
    """Maps A from span(V) to span(U) with q(Av) = B(v, Av).

    A is an l x l matrix whose j-th column holds the u-coordinates of A v_j. Membership
    is decidable over any field; the element list needs a finite one.
    """

    form: QuadForm
    U: Tuple[Vector, ...]
    V: Tuple[Vector, ...]

    @property
    def l(self) -> int:
        return len(self.U)

    def __contains__(self, A) -> bool:
        q = self.form
        f = q.field
        l = self.l
        if len(A) != l or any(len(col) != l for col in A):
            return False
        samples = [linalg.unit(f, l, j) for j in range(l)]
        samples += [linalg.vadd(f, samples[i], samples[j]) for i in range(l) for j in range(i + 1, l)]
        for z in samples:
            v = linalg.combine(f, z, self.V, q.dim)
            Av = linalg.combine(f, linalg.apply(f, A, z), self.U, q.dim)
            if q.eval(Av) != q.bilinear(v, Av):
                return False
        return True

    @cached_property
    def elements(self) -> Tuple[Matrix, ...]:
        f = self.form.field
        if not f.is_finite:
            raise Undecidable("the A-group over an infinite field is only available as a membership test")
        l = self.l
        # members are symmetric in the pairing, so only the upper triangle is free
        slots = [(i, j) for j in range(l) for i in range(j + 1)]
        _check_budget(f.order ** len(slots), "A-group enumeration")
        found = []
        for values in itertools.product(list(f.enumerate()), repeat=len(slots)):
            entries = dict(zip(slots, values))
            A = tuple(tuple(entries[min(i, j), max(i, j)] for i in range(l)) for j in range(l))
            if A in self:
                found.append(A)
        members = set(found)
        for A in found:
            for C in found:
                if linalg.madd(f, A, C) not in members:
                    raise StructureError("A-group is not closed under addition")
        return tuple(found)

    @property
    def order(self) -> int:
        return len(self.elements)


def a_group(q: QuadForm, U: Sequence[Sequence], V: Sequence[Sequence]) -> AGroup:
    f = q.field
    U = tuple(tuple(u) for u in U)
    V = tuple(tuple(v) for v in V)
    if len(U) != len(V):
        raise FormError("U and V have different lengths")
    for i, u in enumerate(U):
        for j in range(len(U)):
            if q.bilinear(u, U[j]) != f.zero:
                raise FormError("U is not totally singular")
            if q.bilinear(u, V[j]) != (f.one if i == j else f.zero):
                raise FormError("U and V are not paired by B")
    return AGroup(q, U, V)


# radical involutions of totally singular spaces

@dataclass(frozen=True)
class RadicalStructure:
    """rho in the basis (g_1..g_n, h_1.., r_1..r_n) with r_i = rho(g_i) + g_i.

    A fixed element is [[alpha, 0, 0], [beta, eta, 0], [delta, eps, alpha]] there; the
    (alpha, beta, eta) part is an isometry of q on span(G, H) keeping span(H), and the
    (delta, eps) part is unconstrained.
    """

    involution: Isometry
    descriptor: InvolutionDescriptor
    g: Tuple[Vector, ...]
    h: Tuple[Vector, ...]
    r: Tuple[Vector, ...]

    @property
    def form(self) -> QuadForm:
        return self.involution.form

    @property
    def field(self) -> Field:
        return self.involution.field

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def s(self) -> int:
        return self.form.dim

    @property
    def g_prime(self) -> Tuple[Vector, ...]:
        return tuple(self.involution(v) for v in self.g)

    @property
    def basis(self) -> Matrix:
        return self.g + self.h + self.r

    @cached_property
    def basis_inverse(self) -> Matrix:
        return linalg.inverse(self.field, self.basis)

    def local(self, M: Matrix) -> Matrix:
        f = self.field
        return linalg.matmul(f, self.basis_inverse, linalg.matmul(f, M, self.basis))

    def to_global(self, L: Matrix) -> Isometry:
        f = self.field
        return Isometry(self.form, linalg.matmul(f, self.basis, linalg.matmul(f, L, self.basis_inverse)))

    @cached_property
    def gh_group(self) -> GroupTable:
        return enumerate_group(restrict(self.form, self.g + self.h))

    @cached_property
    def m_group(self) -> Tuple[Matrix, ...]:
        """Isometries of q on span(G, H) that keep span(H), in (G, H) coordinates."""
        f = self.field
        n = self.n
        return tuple(M for M in self.gh_group.elements if all(x == f.zero for col in M[n:] for x in col[:n]))

    def lift(self, m: Matrix) -> Matrix:
        f = self.field
        n, k = self.n, len(self.h)
        zeros = (f.zero,) * n
        cols = [tuple(m[j]) + zeros for j in range(n + k)]
        cols += [(f.zero,) * (n + k) + tuple(m[j][:n]) for j in range(n)]
        return tuple(cols)

    def mat_element(self, D: Matrix) -> Matrix:
        """The element moving g_j and h_j by the R-combinations in the columns of D."""
        f = self.field
        n, k, s = self.n, len(self.h), self.s
        cols = [linalg.unit(f, s, j)[:n + k] + tuple(D[j]) for j in range(n + k)]
        cols += [linalg.unit(f, s, n + k + j) for j in range(n)]
        return tuple(cols)

    def is_mat_element(self, L: Matrix) -> bool:
        f = self.field
        n, k, s = self.n, len(self.h), self.s
        return all(L[j][:n + k] == linalg.unit(f, s, j)[:n + k] for j in range(n + k)) and \
            all(L[j] == linalg.unit(f, s, j) for j in range(n + k, s))

    def mat_generators(self) -> List[Matrix]:
        f = self.field
        n = self.n
        gens = []
        for j in range(self.s - n):
            for i in range(n):
                D = tuple(linalg.unit(f, n, i) if c == j else (f.zero,) * n for c in range(self.s - n))
                gens.append(self.mat_element(D))
        return gens

    @property
    def factors(self) -> Dict[str, int]:
        return {
            "O(q_GH) keeping H": len(self.m_group),
            "Mat(n, s-n)": self.field.order ** (self.n * (self.s - self.n)),
        }

    @property
    def predicted_order(self) -> int:
        ret = 1
        for v in self.factors.values():
            ret *= v
        return ret

    @property
    def reference_orders(self) -> Dict[str, int]:
        """|O(q_GH)| without the H-stabilizer condition; informational."""
        full = self.gh_group.order
        return {"O(q_GH)": full, "product with O(q_GH)": full * self.factors["Mat(n, s-n)"]}

    def decompose(self, gamma: Isometry) -> Tuple[Isometry, Isometry]:
        """gamma = m m' with m from the stabilizer part and m' from the matrix part."""
        f = self.field
        if not _commutes(f, gamma.matrix, self.involution.matrix):
            raise StructureError("element is not fixed by the involution")
        L = self.local(gamma.matrix)
        width = self.s - self.n
        m = self.lift(tuple(col[:width] for col in L[:width]))
        rest = linalg.matmul(f, linalg.inverse(f, m), L)
        if not self.is_mat_element(rest):
            raise StructureError("remainder is not in the matrix part")
        return self.to_global(m), self.to_global(rest)

    def violations(self) -> List[str]:
        f = self.field
        ql = restrict(self.form, self.basis)
        rho = self.local(self.involution.matrix)
        ident = linalg.identity(f, self.s)
        gens = self.mat_generators()
        ret = []
        for E in gens:
            if not is_isometry(ql, E) or not _commutes(f, E, rho):
                ret.append("a matrix-part generator is not a fixed isometry")
        for m in self.m_group:
            L = self.lift(m)
            if not is_isometry(ql, L) or not _commutes(f, L, rho):
                ret.append("a lifted stabilizer element is not a fixed isometry")
            if L != ident and self.is_mat_element(L):
                ret.append("the two parts intersect beyond the identity")
            inv = linalg.inverse(f, L)
            for E in gens:
                if not self.is_mat_element(linalg.matmul(f, L, linalg.matmul(f, E, inv))):
                    ret.append("the matrix part is not normal")
                    break
        return ret


def radical_fixed_structure(q: QuadForm, rho: Isometry) -> RadicalStructure:
    if rho.form != q:
        raise FormError("involution acts on a different space")
    if not is_totally_singular(q):
        raise FormError("radical fixed-point structure needs W = rad(W)")
    d = classify(rho)
    if d.kind is not InvolutionKind.RADICAL:
        raise FormError(f"{d.kind.value} involution is not radical")
    f = q.field
    F = fixed_space(rho)
    g = tuple(linalg.complement(f, F.basis, q.dim))
    N = linalg.madd(f, rho.matrix, linalg.identity(f, q.dim))
    r = tuple(linalg.apply(f, N, v) for v in g)
    h = tuple(greedy_extension(f, r, F.basis))
    structure = RadicalStructure(rho, d, g, h, r)
    logger.info(f"Radical structure on {q.format()}: n={structure.n}, s={structure.s}")
    return structure


# diagonal involutions of nonsingular spaces

@dataclass
class PXCFactorization:
    structure: "DiagonalStructure"
    element: Isometry
    P: Isometry
    X: Isometry
    C: Isometry
    blocks: Dict[str, Matrix]

    def violations(self) -> List[str]:
        s = self.structure
        ret = []
        if self.P.compose(self.X).compose(self.C).matrix != self.element.matrix:
            ret.append("P X C != phi")
        for name, part in (("P", self.P), ("X", self.X), ("C", self.C)):
            if not is_isometry(s.form, part.matrix):
                ret.append(f"{name} part is not an isometry")
            elif not s.in_centralizer(part):
                ret.append(f"{name} part is not fixed by the involution")
        ret += s.c_group_violations(s.local(self.C.matrix))
        return ret


@dataclass(frozen=True)
class DiagonalStructure:
    """tau in the ordered basis (U_is, U_an, X, V).

    U_is + U_an spans the residual space of tau, U_is being its isotropic vectors, V is
    a totally isotropic completion paired with U, and X spans the complement of U + V.
    A fixed element is block upper triangular there with U-block phi_U and V-block
    phi_U^*.
    """

    involution: Isometry
    descriptor: InvolutionDescriptor
    u_is: Tuple[Vector, ...]
    u_an: Tuple[Vector, ...]
    x: Tuple[Vector, ...]
    v: Tuple[Vector, ...]

    @property
    def form(self) -> QuadForm:
        return self.involution.form

    @property
    def field(self) -> Field:
        return self.involution.field

    @property
    def U(self) -> Tuple[Vector, ...]:
        return self.u_is + self.u_an

    @property
    def l(self) -> int:
        return len(self.U)

    @property
    def p(self) -> int:
        return len(self.x)

    @property
    def dim_is(self) -> int:
        return len(self.u_is)

    @property
    def ranges(self) -> Tuple[range, range, range]:
        l, p = self.l, self.p
        return range(l), range(l, l + p), range(l + p, 2 * l + p)

    @property
    def basis(self) -> Matrix:
        return self.U + self.x + self.v

    @cached_property
    def basis_inverse(self) -> Matrix:
        return linalg.inverse(self.field, self.basis)

    @cached_property
    def local_form(self) -> QuadForm:
        return restrict(self.form, self.basis)

    @cached_property
    def beta_gram(self) -> Matrix:
        beta = residual_beta(self.involution)
        U = self.U
        return tuple(tuple(beta(U[i], U[j]) for i in range(self.l)) for j in range(self.l))

    def local(self, M: Matrix) -> Matrix:
        f = self.field
        return linalg.matmul(f, self.basis_inverse, linalg.matmul(f, M, self.basis))

    def to_global(self, L: Matrix) -> Isometry:
        f = self.field
        return Isometry(self.form, linalg.matmul(f, self.basis, linalg.matmul(f, L, self.basis_inverse)))

    def in_centralizer(self, g: Isometry) -> bool:
        return _commutes(self.field, g.matrix, self.involution.matrix)

    def _lift(self, part: int, z: Sequence) -> Vector:
        f = self.field
        l, p = self.l, self.p
        offset = (0, l, l + p)[part]
        size = (l, p, l)[part]
        return (f.zero,) * offset + tuple(z) + (f.zero,) * (2 * l + p - offset - size)

    # factor groups

    @cached_property
    def beta_group(self) -> Tuple[Matrix, ...]:
        """O(beta_U): invertible a on U with a^T beta a = beta, the U-blocks of fixed elements.

        A subgroup of O(q_U) since beta(w, w) = q(w) on U.
        """
        f = self.field
        l = self.l
        G = self.beta_gram
        _require_finite(f, "O(beta_U) enumeration")
        _check_budget(f.order ** (l * l), "O(beta_U) enumeration")
        found = []
        for entries in itertools.product(list(f.enumerate()), repeat=l * l):
            a = tuple(tuple(entries[j * l:(j + 1) * l]) for j in range(l))
            if linalg.is_invertible(f, a) and \
                    linalg.matmul(f, linalg.transpose(a), linalg.matmul(f, G, a)) == G:
                found.append(a)
        return tuple(found)

    @cached_property
    def x_group(self) -> GroupTable:
        return enumerate_group(restrict(self.form, self.u_an + self.x))

    @cached_property
    def q_u_group(self) -> GroupTable:
        """The full O(q_U), in the coordinates of U."""
        return enumerate_group(restrict(self.form, self.U))

    @cached_property
    def a_group(self) -> AGroup:
        return a_group(self.form, self.U, self.v)

    @property
    def factors(self) -> Dict[str, int]:
        return {
            "O(beta_U)": len(self.beta_group),
            "O(q_Uan+X)": self.x_group.order,
            "A(q_U)": self.a_group.order,
            "Hom(X, U_is)": self.field.order ** (self.dim_is * self.p),
        }

    @property
    def predicted_order(self) -> int:
        ret = 1
        for v in self.factors.values():
            ret *= v
        return ret

    @property
    def reference_orders(self) -> Dict[str, int]:
        """|O(q_U)| and the product with O(q_U) in place of O(beta_U); informational."""
        full = self.q_u_group.order
        product = full
        for name, v in self.factors.items():
            if name != "O(beta_U)":
                product *= v
        return {"O(q_U)": full, "product with O(q_U)": product}

    def beta_group_violations(self) -> List[str]:
        return [f"U-block {i} of O(beta_U) is not in O(q_U)"
                for i, a in enumerate(self.beta_group) if a not in self.q_u_group]

    # completions

    def _assemble(self, a: Matrix, c: Matrix, m: Sequence, b: Matrix, c2: Matrix, d: Matrix) -> Matrix:
        f = self.field
        l, p = self.l, self.p
        cols = [tuple(a[j]) + (f.zero,) * (p + l) for j in range(l)]
        cols += [tuple(c[j]) + tuple(b[j]) + (f.zero,) * l for j in range(p)]
        cols += [tuple(m[j]) + tuple(c2[j]) + tuple(d[j]) for j in range(l)]
        return tuple(cols)

    def _c2(self, c: Matrix, b: Matrix, d: Matrix) -> Matrix:
        """The X-components of the images of V, forced by B(g x, g v) = 0."""
        f = self.field
        ql = self.local_form
        images = [tuple(c[i]) + tuple(b[i]) + (f.zero,) * self.l for i in range(self.p)]
        system = linalg.from_rows([[ql.bilinear(w, self._lift(1, linalg.unit(f, self.p, k)))
                                    for k in range(self.p)] for w in images])
        ret = []
        for j in range(self.l):
            dv = self._lift(2, d[j])
            z = linalg.solve(f, system, [ql.bilinear(w, dv) for w in images])
            if z is None:
                raise FormError("X block does not preserve B")
            ret.append(z)
        return tuple(ret)

    def m_solutions(self, a: Matrix, c: Matrix, b: Matrix) -> Iterator[Matrix]:
        """Every fixed isometry with blocks a, c and b, as a matrix in the ordered basis."""
        f = self.field
        l, p = self.l, self.p
        ql = self.local_form
        d = star_map(f, a)
        c2 = self._c2(c, b, d)
        _require_finite(f, "M completion")
        _check_budget(f.order ** l, "M completion")
        candidates = list(itertools.product(list(f.enumerate()), repeat=l))

        def image(j: int, col: Sequence) -> Vector:
            return tuple(col) + tuple(c2[j]) + tuple(d[j])

        def extend(picked: List[Sequence]) -> Iterator[Matrix]:
            j = len(picked)
            if j == l:
                M = self._assemble(a, c, picked, b, c2, d)
                if is_isometry(ql, M):
                    yield M
                return
            v = self._lift(2, linalg.unit(f, l, j))
            for col in candidates:
                w = image(j, col)
                if ql.eval(w) != ql.eval(v):
                    continue
                if any(ql.bilinear(image(i, picked[i]), w) != ql.bilinear(self._lift(2, linalg.unit(f, l, i)), v)
                       for i in range(j)):
                    continue
                yield from extend(picked + [col])

        return extend([])

    def _complete(self, a: Matrix, c: Matrix, b: Matrix) -> Matrix:
        for M in self.m_solutions(a, c, b):
            return M
        raise StructureError("no completion to an isometry")

    def m_completion(self, c: Matrix, b: Matrix) -> Matrix:
        """The V -> U block completing [[I, c], [0, b]] on U + X to a fixed isometry."""
        f = self.field
        l, p = self.l, self.p
        upper = tuple(linalg.unit(f, l + p, j) for j in range(l))
        upper += tuple(tuple(c[j]) + tuple(b[j]) for j in range(p))
        if not is_isometry(restrict(self.form, self.U + self.x), upper):
            raise FormError("q(b z + c z) != q(z) on X")
        U, _, V = self.ranges
        return _block(self._complete(linalg.identity(f, l), c, b), U, V)

    # factorization

    def pxc_factorize(self, phi: Isometry) -> PXCFactorization:
        f = self.field
        l, p = self.l, self.p
        if phi.form != self.form or not self.in_centralizer(phi):
            raise StructureError("element is not fixed by the involution")
        U, X, V = self.ranges
        L = self.local(phi.matrix)
        a = _block(L, U, U)
        P = self._complete(a, linalg.zero_matrix(f, l, p), linalg.identity(f, p))
        rest = linalg.matmul(f, linalg.inverse(f, P), L)
        c1, b1 = _block(rest, U, X), _block(rest, X, X)
        c_an = tuple(tuple(f.zero if i < self.dim_is else x for i, x in enumerate(col)) for col in c1)
        Xm = self._complete(linalg.identity(f, l), c_an, b1)
        C = linalg.matmul(f, linalg.inverse(f, Xm), rest)
        blocks = {
            "phi_U": a,
            "A_phi": linalg.matmul(f, linalg.inverse(f, a), _block(P, U, V)),
            "X_c": c_an,
            "X_b": b1,
            "C1": _block(C, U, X),
            "C2": _block(C, X, V),
            "M": _block(C, U, V),
        }
        return PXCFactorization(self, phi, self.to_global(P), self.to_global(Xm), self.to_global(C), blocks)

    def c_group_violations(self, L: Matrix) -> List[str]:
        f = self.field
        l, p = self.l, self.p
        U, X, V = self.ranges
        ql = self.local_form
        ret = []
        for name, part in (("U", U), ("X", X), ("V", V)):
            if _block(L, part, part) != linalg.identity(f, len(part)):
                ret.append(f"C part is not the identity on {name}")
        if any(not _is_zero_block(f, _block(L, rows, cols)) for rows, cols in ((X, U), (V, U), (V, X))):
            ret.append("C part is not block upper triangular")
        C1, C2, M = _block(L, U, X), _block(L, X, V), _block(L, U, V)
        if any(x != f.zero for col in C1 for x in col[self.dim_is:]):
            ret.append("C1 does not map X into the isotropic part of U")

        def u(z):
            return self._lift(0, z)

        def x(z):
            return self._lift(1, z)

        def v(j):
            return self._lift(2, linalg.unit(f, l, j))

        for i in range(p):
            xi = x(linalg.unit(f, p, i))
            for j in range(l):
                if ql.bilinear(u(C1[i]), v(j)) != ql.bilinear(xi, x(C2[j])):
                    ret.append(f"B(C1 x_{i + 1}, v_{j + 1}) != B(x_{i + 1}, C2 v_{j + 1})")
        for i in range(l):
            for j in range(i + 1, l):
                total = f.sum([ql.bilinear(u(M[i]), v(j)), ql.bilinear(v(i), u(M[j])),
                               ql.bilinear(x(C2[i]), x(C2[j]))])
                if total != f.zero:
                    ret.append(f"M + M^T != C2^T J C2 at ({i + 1}, {j + 1})")
        for j in range(l):
            total = f.sum([ql.eval(u(M[j])), ql.bilinear(u(M[j]), v(j)), ql.eval(x(C2[j]))])
            if total != f.zero:
                ret.append(f"q(M v_{j + 1}) + B(M v_{j + 1}, v_{j + 1}) != q(C2 v_{j + 1})")
        return ret

    # relations checked on fixed elements

    def a_part(self, g: Isometry) -> Tuple[Matrix, Matrix]:
        """(phi_U, A) with A = phi_U^-1 times the V -> U block."""
        f = self.field
        U, _, V = self.ranges
        L = self.local(g.matrix)
        a = _block(L, U, U)
        return a, linalg.matmul(f, linalg.inverse(f, a), _block(L, U, V))

    def fix_relation_violations(self, g: Isometry) -> List[str]:
        """q(v + A v) + q(C2 v) = q(phi_U^* v) on the completion basis."""
        f = self.field
        U, X, V = self.ranges
        ql = self.local_form
        L = self.local(g.matrix)
        _, A = self.a_part(g)
        c2, d = _block(L, X, V), _block(L, V, V)
        ret = []
        for j in range(self.l):
            w = linalg.vadd(f, self._lift(2, linalg.unit(f, self.l, j)), self._lift(0, A[j]))
            lhs = f.add(ql.eval(w), ql.eval(self._lift(1, c2[j])))
            if lhs != ql.eval(self._lift(2, d[j])):
                ret.append(f"relation fails on v_{j + 1}")
        return ret

    def fixes_subspace_violations(self, table: GroupTable) -> List[str]:
        """Elements whose centralizer membership disagrees with keeping U and beta."""
        f = self.field
        G = self.beta_gram
        ret = []
        for i, g in enumerate(table):
            images = [linalg.coordinates(f, self.U, g(w)) for w in self.U]
            keeps = all(z is not None for z in images)
            if keeps:
                a = tuple(images)
                keeps = linalg.matmul(f, linalg.transpose(a), linalg.matmul(f, G, a)) == G
            if keeps != self.in_centralizer(g):
                ret.append(f"element {i}: keeps U and beta = {keeps}, fixed = {not keeps}")
        return ret

    def normality_violations(self, elements: Sequence[Isometry]) -> List[str]:
        """X C X^-1 stays in the C-group and P (X C) P^-1 stays in X C."""
        f = self.field
        U = self.ranges[0]
        ident = linalg.identity(f, self.l)
        parts = [self.pxc_factorize(g) for g in elements]
        ret = []
        for outer in parts:
            for inner in parts:
                if self.c_group_violations(self.local(inner.C.conjugate_by(outer.X).matrix)):
                    ret.append("conjugating C by X leaves the C-group")
                moved = inner.X.compose(inner.C).conjugate_by(outer.P)
                if _block(self.local(moved.matrix), U, U) != ident:
                    ret.append("conjugating X C by P leaves X C")
        return ret


def diagonal_fixed_structure(q: QuadForm, tau: Isometry) -> DiagonalStructure:
    if tau.form != q:
        raise FormError("involution acts on a different space")
    if not is_nonsingular(q):
        raise FormError("diagonal fixed-point structure needs a nonsingular space")
    d = classify(tau)
    if d.kind is not InvolutionKind.DIAGONAL:
        raise FormError(f"{d.kind.value} involution is not diagonal")
    f = q.field
    R = list(d.residual.basis)
    u_is = Subspace.span(f, q.dim, semilinear_kernel(f, R, [q.eval(r) for r in R])).basis
    u_an = tuple(greedy_extension(f, u_is, R))
    U = tuple(u_is) + u_an
    V = nonsingular_completion(q, U).V
    functionals = linalg.from_rows([[q.bilinear(w, q.basis_vector(j)) for j in range(q.dim)] for w in U + V])
    perp = linalg.kernel(f, functionals)
    pairs = symplectic_basis(q, perp) if perp else []
    x = tuple(e for e, _ in pairs) + tuple(g for _, g in pairs)
    structure = DiagonalStructure(tau, d, tuple(u_is), u_an, x, V)
    logger.info(f"Diagonal structure on {q.format()}: l={structure.l}, "
                f"isotropic part {structure.dim_is}, dim X = {structure.p}")
    return structure


Structure = Union[RadicalStructure, DiagonalStructure]


def fixed_structure(phi: Isometry) -> Structure:
    q = phi.form
    d = classify(phi)
    if d.kind is InvolutionKind.RADICAL and is_totally_singular(q):
        return radical_fixed_structure(q, phi)
    if d.kind is InvolutionKind.DIAGONAL and is_nonsingular(q):
        return diagonal_fixed_structure(q, phi)
    raise FormError(f"no fixed-point structure for a {d.kind.value} involution on {q.format()}")


def fixed_structure_report(phi: Isometry, table: Optional[GroupTable] = None) -> FixedStructureReport:
    q = phi.form
    structure = fixed_structure(phi)
    order = centralizer(table, phi).order if table is not None else None
    predicted = structure.predicted_order
    if order is not None and order != predicted:
        logger.warning(f"Centralizer order {order} differs from the predicted {predicted}")
    return FixedStructureReport(
        field=q.field.name,
        form=q.format(),
        descriptor=structure.descriptor.to_report(),
        centralizer_order=order,
        predicted_order=predicted,
        factors=structure.factors,
        reference_orders=structure.reference_orders,
        matches=None if order is None else order == predicted,
    )


# the general triple case

def element_triple(T: Triple, g: Isometry) -> Tuple[Matrix, Matrix, Matrix]:
    """(psi, Z, mu) with g = [psi, psi Z; 0, mu] in the basis of T."""
    if g.form != T.form:
        raise FormError("element acts on a different space")
    f = T.field
    s = T.s
    L = linalg.matmul(f, linalg.inverse(f, T.basis), linalg.matmul(f, g.matrix, T.basis))
    if any(x != f.zero for col in L[:s] for x in col[s:]):
        raise StructureError("element does not leave rad(W) invariant")
    psi = tuple(col[:s] for col in L[:s])
    upper = tuple(col[:s] for col in L[s:])
    mu = tuple(col[s:] for col in L[s:])
    return psi, linalg.matmul(f, linalg.inverse(f, psi), upper), mu


def general_fixed_check(T: Triple, psi: Matrix, Z: Matrix, mu: Matrix) -> bool:
    """[psi, psi Z; 0, mu] commutes with T iff psi commutes with rho, mu with tau, and
    Y + psi^-1 Y mu = Z + rho Z tau."""
    f = T.field
    if len(psi) != T.s or len(mu) != T.t or len(Z) != T.t:
        raise FormError("candidate does not match the decomposition")
    if not _commutes(f, psi, T.rho) or not _commutes(f, mu, T.tau):
        return False
    lhs = linalg.madd(f, T.Y, linalg.matmul(f, linalg.inverse(f, psi), linalg.matmul(f, T.Y, mu)))
    rhs = linalg.madd(f, Z, linalg.matmul(f, T.rho, linalg.matmul(f, Z, T.tau)))
    return lhs == rhs
