"""
Involutions of O(q,k)

Classification into radical, null, diagonal, hyperbolic and general types, reduced
factorizations into orthogonal transvections, the block decomposition
phi = [rho, rho Y; 0, tau] relative to W = rad(W) + W1 and its normalization, the
conjugacy predicates, and the brute-force conjugacy oracle over an enumerated group.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .config import get_settings
from .errors import (
    BudgetExceeded,
    FormError,
    NormalizationError,
    NotAnInvolution,
    StructureError,
    Undecidable,
)
from .field import Element, Field
from .linalg import Matrix, Subspace, Vector
from .models import CensusReport, ClassRow, DescriptorReport, InvolutionKind, Verdict
from .orthogroup import (
    GroupTable,
    Isometry,
    enumerate_group,
    fixed_space,
    identity,
    involutions_of,
    is_isometry,
    make_isometry,
    matrix_codes,
    orthogonal_transvection,
    preserves_bilinear,
    product_of_transvections,
    residual_space,
)
from .quadspace import (
    QuadForm,
    arf_invariant,
    greedy_extension,
    projective_points,
    radical,
    restrict,
    totally_singular_isometric,
)

logger = logging.getLogger(__name__)

TRANSVECTION_KINDS = (InvolutionKind.DIAGONAL, InvolutionKind.HYPERBOLIC)


def _shifted(phi: Isometry) -> Matrix:
    return linalg.madd(phi.field, phi.matrix, linalg.identity(phi.field, phi.dim))


def check_involution(phi: Isometry) -> None:
    if phi.is_identity:
        raise NotAnInvolution("the identity is not an involution")
    square = phi.compose(phi)
    for j in range(phi.dim):
        e = linalg.unit(phi.field, phi.dim, j)
        if square(e) != e:
            raise NotAnInvolution("phi^2 moves a basis vector", e)


@dataclass(frozen=True)
class InvolutionDescriptor:
    isometry: Isometry
    kind: InvolutionKind
    residue: int
    length: int
    residual: Subspace
    norm_signature: Tuple[Element, ...] = ()
    inducing: Tuple[Vector, ...] = ()
    # radical type: norms of a basis of ker(phi + 1) meet rad(W)
    kernel_norms: Tuple[Element, ...] = ()

    @property
    def form(self) -> QuadForm:
        return self.isometry.form

    @property
    def field(self) -> Field:
        return self.isometry.field

    @property
    def dim_u(self) -> Optional[int]:
        return len(self.inducing) if self.kind in TRANSVECTION_KINDS else None

    @property
    def residual_q(self) -> QuadForm:
        return restrict(self.form, self.residual.basis)

    def to_report(self) -> DescriptorReport:
        f = self.field
        return DescriptorReport(
            field=f.name,
            kind=self.kind,
            residue=self.residue,
            length=self.length,
            norm_signature=[f.format(a) for a in self.norm_signature],
            dim_u=self.dim_u,
            residual_form=[f.format(self.form.eval(r)) for r in self.residual.basis],
        )


# classification

def _diagonalize(f: Field, basis: Sequence[Vector], beta: Callable[[Vector, Vector], Element]) -> List[Vector]:
    """Orthogonal basis for a nondegenerate symmetric form that is not alternating.

    When the remainder turns alternating, the last picked e is swapped for e + f with f
    from the remainder, which makes the next projection non-alternating again.
    """
    vecs = [tuple(v) for v in basis]
    out: List[Vector] = []
    while vecs:
        idx = next((i for i, v in enumerate(vecs) if beta(v, v) != f.zero), None)
        if idx is None:
            if not out:
                raise NormalizationError("the residual bilinear form is alternating")
            e = out.pop()
            vecs = [linalg.vadd(f, e, vecs[0])] + vecs
            continue
        e = vecs.pop(idx)
        a = beta(e, e)
        projected = []
        for v in vecs:
            c = beta(v, e)
            projected.append(linalg.vadd(f, v, linalg.vscale(f, f.div(c, a), e)) if c != f.zero else v)
        vecs = projected
        out.append(e)
    return out


def _monic(f: Field, v: Vector) -> Vector:
    lead = next(x for x in v if x != f.zero)
    return linalg.vscale(f, f.inv(lead), v)


def residual_beta(phi: Isometry) -> Callable[[Vector, Vector], Element]:
    """beta(w, w') = B(w, x') where (phi + 1) x' = w'."""
    q = phi.form
    N = _shifted(phi)

    def beta(w: Vector, v: Vector) -> Element:
        return q.bilinear(w, linalg.solve(phi.field, N, v))
    return beta


def diagonal_inducing(phi: Isometry) -> Tuple[Vector, ...]:
    """Mutually orthogonal u_1..u_l with phi = tau_{u_1} ... tau_{u_l} and l = res(phi)."""
    f = phi.field
    R = residual_space(phi)
    us = tuple(_monic(f, u) for u in _diagonalize(f, R.basis, residual_beta(phi)))
    if product_of_transvections(phi.form, us).matrix != phi.matrix:
        raise StructureError("inducing set does not reproduce the involution")
    return us


def _is_diagonal(phi: Isometry, rad: Subspace, res: int) -> bool:
    f = phi.field
    R = residual_space(phi)
    if R.dim != res or linalg.intersection(f, R.basis, rad.basis):
        return False
    return any(phi.form.eval(r) != f.zero for r in R.basis)


def hyperbolic_axis(phi: Isometry) -> Optional[Vector]:
    """Least anisotropic u fixed by phi with tau_u phi diagonal of the same residue and
    residual space orthogonal to u, or None."""
    q = phi.form
    f = q.field
    if not f.is_finite:
        raise Undecidable("hyperbolic axis search over an infinite field")
    rad = radical(q)
    res = residual_space(phi).dim
    F = fixed_space(phi)
    limit = get_settings().search_limit
    for count, z in enumerate(projective_points(f, F.dim)):
        if count >= limit:
            raise BudgetExceeded(f"hyperbolic axis search exceeded {limit} candidates")
        u = linalg.combine(f, z, F.basis, q.dim)
        if q.eval(u) == f.zero or rad.contains(f, u):
            continue
        psi = orthogonal_transvection(q, u).compose(phi)
        if psi.is_identity or not _is_diagonal(psi, rad, res):
            continue
        if all(q.bilinear(u, r) == f.zero for r in residual_space(psi).basis):
            return u
    return None


def classify(phi: Isometry) -> InvolutionDescriptor:
    check_involution(phi)
    q = phi.form
    f = q.field
    R = residual_space(phi)
    res = R.dim
    rad = radical(q)
    N = _shifted(phi)
    rad_image = Subspace.span(f, q.dim, [linalg.apply(f, N, g) for g in rad.basis])
    if rad_image.dim == res:
        kernel = linalg.intersection(f, fixed_space(phi).basis, rad.basis)
        moved = greedy_extension(f, kernel, rad.basis)
        return InvolutionDescriptor(
            phi, InvolutionKind.RADICAL, res, res, R,
            norm_signature=tuple(q.eval(g) for g in moved),
            kernel_norms=tuple(q.eval(g) for g in kernel),
        )
    if not linalg.intersection(f, R.basis, rad.basis):
        if all(q.eval(r) == f.zero for r in R.basis):
            return InvolutionDescriptor(phi, InvolutionKind.NULL, res, res // 2, R)
        us = diagonal_inducing(phi)
        return InvolutionDescriptor(
            phi, InvolutionKind.DIAGONAL, res, len(us), R,
            norm_signature=tuple(q.eval(u) for u in us), inducing=us,
        )
    u = hyperbolic_axis(phi)
    if u is None:
        return InvolutionDescriptor(phi, InvolutionKind.GENERAL_TRIPLE, res, res, R)
    us = (_monic(f, u),) + diagonal_inducing(orthogonal_transvection(q, u).compose(phi))
    return InvolutionDescriptor(
        phi, InvolutionKind.HYPERBOLIC, res, len(us), R,
        norm_signature=tuple(q.eval(w) for w in us), inducing=us,
    )


def inducing_vectors(phi: Isometry) -> Tuple[Vector, ...]:
    d = classify(phi)
    if d.kind not in TRANSVECTION_KINDS:
        raise FormError(f"{d.kind.value} involutions have no inducing set")
    return d.inducing


# (rho, Y, tau) decomposition

def _blocks(f: Field, A: Matrix, C: Matrix, D: Matrix, s: int, t: int) -> Matrix:
    """[[A, C], [0, D]] with A s x s, C s x t, D t x t, all column-major."""
    cols = [tuple(A[j]) + (f.zero,) * t for j in range(s)]
    cols += [tuple(C[j]) + tuple(D[j]) for j in range(t)]
    return tuple(cols)


def _split(f: Field, M: Matrix, s: int) -> Tuple[Matrix, Matrix, Matrix, bool]:
    A = tuple(col[:s] for col in M[:s])
    C = tuple(col[:s] for col in M[s:])
    D = tuple(col[s:] for col in M[s:])
    lower_zero = all(x == f.zero for col in M[:s] for x in col[s:])
    return A, C, D, lower_zero


@dataclass(frozen=True)
class Triple:
    """phi = [rho, rho Y; 0, tau] in the basis (rad(W) basis, W1 basis)."""

    form: QuadForm
    basis: Matrix
    s: int
    rho: Matrix
    Y: Matrix
    tau: Matrix

    @property
    def field(self) -> Field:
        return self.form.field

    @property
    def t(self) -> int:
        return len(self.basis) - self.s

    @property
    def rad_basis(self) -> Tuple[Vector, ...]:
        return tuple(self.basis[:self.s])

    @property
    def w1_basis(self) -> Tuple[Vector, ...]:
        return tuple(self.basis[self.s:])

    @cached_property
    def q_rad(self) -> QuadForm:
        return restrict(self.form, self.rad_basis)

    @cached_property
    def q_w1(self) -> QuadForm:
        return restrict(self.form, self.w1_basis)

    @property
    def rho_y(self) -> Matrix:
        return linalg.matmul(self.field, self.rho, self.Y)

    def violations(self) -> List[str]:
        f = self.field
        ret = []
        if linalg.matmul(f, self.rho, self.rho) != linalg.identity(f, self.s):
            ret.append("rho^2 != id")
        if linalg.matmul(f, self.tau, self.tau) != linalg.identity(f, self.t):
            ret.append("tau^2 != id")
        if linalg.matmul(f, self.rho, linalg.matmul(f, self.Y, self.tau)) != self.Y:
            ret.append("Y != rho Y tau")
        if not is_isometry(self.q_rad, self.rho):
            ret.append("rho does not preserve q on rad(W)")
        if self.t and not preserves_bilinear(self.q_w1, self.tau):
            ret.append("tau does not preserve B on W1")
        for j in range(self.t):
            e = linalg.unit(f, self.t, j)
            lhs = f.add(self.q_w1.eval(linalg.apply(f, self.tau, e)), self.q_rad.eval(self.Y[j]))
            if lhs != self.q_w1.eval(e):
                ret.append(f"q(tau w + rho Y w) != q(w) for w = w1_{j + 1}")
        return ret


def decompose_triple(phi: Isometry) -> Triple:
    check_involution(phi)
    q = phi.form
    f = q.field
    rad = list(radical(q).basis)
    P = tuple(rad) + tuple(linalg.complement(f, rad, q.dim))
    s = len(rad)
    M = linalg.matmul(f, linalg.inverse(f, P), linalg.matmul(f, phi.matrix, P))
    rho, C, tau, lower_zero = _split(f, M, s)
    if not lower_zero:
        raise StructureError("involution does not leave rad(W) invariant")
    T = Triple(q, P, s, rho, linalg.matmul(f, rho, C), tau)
    bad = T.violations()
    if bad:
        raise StructureError("; ".join(bad))
    return T


def reassemble(T: Triple) -> Isometry:
    f = T.field
    M = _blocks(f, T.rho, T.rho_y, T.tau, T.s, T.t)
    return make_isometry(T.form, linalg.matmul(f, T.basis, linalg.matmul(f, M, linalg.inverse(f, T.basis))))


@dataclass(frozen=True)
class NormalizedTriple:
    """phi = [rho, Y0; 0, tau_Y] in the basis (rad(W), u'_1..u'_l, v_1..v_l, X)."""

    source: Triple
    basis: Matrix
    rho: Matrix
    Y0: Matrix
    tau_Y: Matrix
    inducing: Tuple[Vector, ...]
    duals: Tuple[Vector, ...]
    scalars: Tuple[Element, ...]
    complement: Tuple[Vector, ...]

    @property
    def s(self) -> int:
        return self.source.s

    def violations(self) -> List[str]:
        T = self.source
        q, f = T.form, T.field
        s, t, l = T.s, T.t, len(self.inducing)
        ret = []
        for u, a in zip(self.inducing, self.scalars):
            if q.eval(u) != f.inv(a):
                ret.append("q(u') != 1/a")
        for j in range(2 * l):
            if not linalg.is_zero(f, self.Y0[j]):
                ret.append(f"Y0 does not vanish on new basis vector {j + 1}")
        for j in range(t):
            if q.eval(linalg.combine(f, self.Y0[j], T.rad_basis, q.dim)) != f.zero:
                ret.append(f"q(Y0 w) != 0 for new basis vector {j + 1}")
        product = product_of_transvections(q, self.inducing).matrix
        local = linalg.matmul(f, linalg.inverse(f, self.basis), linalg.matmul(f, product, self.basis))
        if _split(f, local, s)[2] != self.tau_Y:
            ret.append("tau_Y is not the product of the orthogonal transvections tau_u'")
        if t and not is_isometry(restrict(q, self.basis[s:]), self.tau_Y):
            ret.append("tau_Y is not orthogonal on the new W1")
        M = _blocks(f, self.rho, self.Y0, self.tau_Y, s, t)
        if linalg.matmul(f, self.basis, M) != linalg.matmul(f, reassemble(T).matrix, self.basis):
            ret.append("normalized blocks do not reassemble to phi")
        return ret


def normalize_triple(T: Triple) -> NormalizedTriple:
    f = T.field
    q = T.form
    n, s, t = q.dim, T.s, T.t
    q_w1 = T.q_w1
    N = linalg.madd(f, T.tau, linalg.identity(f, t))
    U = linalg.column_space(f, N) if t else []

    def beta(w: Vector, v: Vector) -> Element:
        return q_w1.bilinear(w, linalg.solve(f, N, v))

    us = _diagonalize(f, U, beta) if U else []

    def lift(w: Vector) -> Vector:
        return linalg.combine(f, w, T.w1_basis, n)

    def lift_rad(r: Vector) -> Vector:
        return linalg.combine(f, r, T.rad_basis, n)

    rho_y = T.rho_y
    inducing, duals, scalars, local_duals = [], [], [], []
    for u in us:
        c = beta(u, u)
        v = linalg.vscale(f, f.inv(c), linalg.solve(f, N, u))
        shift = lift_rad(linalg.apply(f, rho_y, v))
        inducing.append(linalg.vadd(f, lift(u), linalg.vscale(f, c, shift)))
        duals.append(lift(v))
        scalars.append(f.inv(c))
        local_duals.append(v)
    if us:
        functionals = [[q_w1.bilinear(z, linalg.unit(f, t, j)) for j in range(t)] for z in us + local_duals]
        X = linalg.kernel(f, linalg.from_rows(functionals))
    else:
        X = [linalg.unit(f, t, j) for j in range(t)]
    complement = tuple(lift(x) for x in X)
    basis = T.rad_basis + tuple(inducing) + tuple(duals) + complement
    phi = reassemble(T).matrix
    M = linalg.matmul(f, linalg.inverse(f, basis), linalg.matmul(f, phi, basis))
    rho, Y0, tau_Y, _ = _split(f, M, s)
    return NormalizedTriple(T, basis, rho, Y0, tau_Y, tuple(inducing), tuple(duals), tuple(scalars), complement)


# conjugacy predicates

Involution = Union[Isometry, InvolutionDescriptor]


def _descriptor(x: Involution) -> InvolutionDescriptor:
    return x if isinstance(x, InvolutionDescriptor) else classify(x)


def _pair(a: Involution, b: Involution, kinds: Sequence[InvolutionKind], name: str):
    d1, d2 = _descriptor(a), _descriptor(b)
    if d1.form != d2.form:
        raise FormError("involutions act on different quadratic spaces")
    if d1.kind not in kinds or d2.kind not in kinds:
        raise FormError(f"{name} needs {' or '.join(k.value for k in kinds)} involutions, "
                        f"got {d1.kind.value} and {d2.kind.value}")
    return d1, d2


def norm_forms_equivalent(f: Field, first: Sequence[Element], second: Sequence[Element]) -> bool:
    """Equivalence of the diagonal bilinear forms <first>_B and <second>_B.

    Over a perfect field every nonzero diagonal entry is a square, so only the
    dimension matters; over f2t the k^2-spans of the entries are compared.
    """
    if len(first) != len(second):
        return False
    if f.is_finite:
        return True
    return f.k2_span_equal(first, second)


def conjugate_test_transvections(a: Involution, b: Involution) -> bool:
    d1, d2 = _pair(a, b, TRANSVECTION_KINDS, "transvection conjugacy")
    if d1.kind != d2.kind or d1.residue != d2.residue or d1.dim_u != d2.dim_u:
        return False
    return norm_forms_equivalent(d1.field, d1.norm_signature, d2.norm_signature)


def conjugate_test_null(a: Involution, b: Involution) -> bool:
    d1, d2 = _pair(a, b, (InvolutionKind.NULL,), "null conjugacy")
    return d1.length == d2.length


def kernel_arf(d: InvolutionDescriptor) -> Optional[Element]:
    """Arf class of the fixed space modulo its radical part.

    Defined for radical involutions when q vanishes on ker(phi + 1) meet rad(W) and W1
    is nonzero; the form then descends to the fixed space modulo that meet.
    """
    q, f = d.form, d.field
    rad = radical(q)
    if d.kind != InvolutionKind.RADICAL or f.k2_linear_rank(d.kernel_norms) or rad.dim == q.dim:
        return None
    F = fixed_space(d.isometry)
    complement = greedy_extension(f, linalg.intersection(f, F.basis, rad.basis), F.basis)
    return arf_invariant(restrict(q, complement))


def conjugate_test_radical(a: Involution, b: Involution) -> bool:
    d1, d2 = _pair(a, b, (InvolutionKind.RADICAL,), "radical conjugacy")
    if d1.length != d2.length or not totally_singular_isometric(d1.field, d1.kernel_norms, d2.kernel_norms):
        return False
    return kernel_arf(d1) == kernel_arf(d2)


@lru_cache(maxsize=32)
def _cached_group(q: QuadForm, symplectic: bool, budget_bits: int) -> GroupTable:
    return enumerate_group(q, symplectic=symplectic, budget_bits=budget_bits, jobs=1)


def _solve_z(T1: Triple, T2: Triple, psi: Matrix, mu: Matrix) -> Optional[Matrix]:
    """Z with rho1 Z + Z tau1 = psi^-1 Y2 mu + Y1 and q(Z e_j) = q(e_j) + q(mu e_j)."""
    f = T1.field
    s, t = T1.s, T1.t
    rhs_matrix = linalg.madd(
        f, linalg.matmul(f, linalg.inverse(f, psi) if s else psi, linalg.matmul(f, T2.Y, mu)), T1.Y)
    n_vars = s * t
    rows, rhs = [], []
    for j in range(t):
        for i in range(s):
            row = []
            for b in range(t):
                for a in range(s):
                    c = f.zero
                    if j == b:
                        c = f.add(c, T1.rho[a][i])
                    if i == a:
                        c = f.add(c, T1.tau[j][b])
                    row.append(c)
            rows.append(row)
            rhs.append(rhs_matrix[j][i])
    # norm conditions, linear after taking k^2-coordinates
    h = [f.k2_coordinates(T1.q_rad.coeffs[i][i]) for i in range(s)]
    for j in range(t):
        e = linalg.unit(f, t, j)
        target = f.k2_coordinates(f.add(T1.q_w1.eval(e), T1.q_w1.eval(linalg.apply(f, mu, e))))
        for l in range(f.k2_degree):
            row = [f.zero] * n_vars
            for a in range(s):
                row[a + s * j] = h[a][l]
            rows.append(row)
            rhs.append(target[l])
    if not rows:
        return tuple(() for _ in range(t))
    x = linalg.solve(f, linalg.from_rows(rows) if n_vars else (), rhs)
    if x is None:
        return None
    return tuple(tuple(x[a + s * b] for a in range(s)) for b in range(t))


def find_conjugator(a: Involution, b: Involution) -> Tuple[Verdict, Optional[Isometry]]:
    """Exact search for g in O(q) with g phi1 g^-1 = phi2 through the block structure."""
    phi1 = a.isometry if isinstance(a, InvolutionDescriptor) else a
    phi2 = b.isometry if isinstance(b, InvolutionDescriptor) else b
    if phi1.form != phi2.form:
        raise FormError("involutions act on different quadratic spaces")
    if phi1.matrix == phi2.matrix:
        return Verdict.TRUE, identity(phi1.form)
    T1, T2 = decompose_triple(phi1), decompose_triple(phi2)
    f = T1.field
    if residual_space(phi1).dim != residual_space(phi2).dim:
        return Verdict.FALSE, None
    if not f.is_finite:
        return Verdict.UNKNOWN, None
    settings = get_settings()
    try:
        psis = [()] if not T1.s else [
            psi for psi in _cached_group(T1.q_rad, False, settings.budget_bits).elements
            if linalg.matmul(f, psi, T1.rho) == linalg.matmul(f, T2.rho, psi)
        ]
        mus = [()] if not T1.t else [
            mu for mu in _cached_group(T1.q_w1, True, settings.budget_bits).elements
            if linalg.matmul(f, mu, T1.tau) == linalg.matmul(f, T2.tau, mu)
        ]
    except BudgetExceeded as e:
        logger.debug(f"Conjugator search abandoned: {e}")
        return Verdict.UNKNOWN, None
    if len(psis) * len(mus) > settings.search_limit:
        logger.debug(f"Conjugator search needs {len(psis) * len(mus)} block pairs")
        return Verdict.UNKNOWN, None
    for psi in psis:
        for mu in mus:
            Z = _solve_z(T1, T2, psi, mu)
            if Z is None:
                continue
            B = linalg.matmul(f, linalg.matmul(f, psi, T1.rho), Z) if T1.s else Z
            local = _blocks(f, psi, B, mu, T1.s, T1.t)
            g = make_isometry(T1.form, linalg.matmul(f, T1.basis, linalg.matmul(f, local, linalg.inverse(f, T1.basis))))
            if g.compose(phi1).matrix != phi2.compose(g).matrix:
                raise StructureError("conjugator from the block equations does not conjugate")
            return Verdict.TRUE, g
    return Verdict.FALSE, None


def conjugate_test_general(a: Involution, b: Involution) -> Verdict:
    return find_conjugator(a, b)[0]


def are_conjugate(a: Involution, b: Involution) -> Verdict:
    """Dispatch on the classification; undecidable cases come back as UNKNOWN."""
    try:
        d1, d2 = _descriptor(a), _descriptor(b)
        if d1.form != d2.form:
            raise FormError("involutions act on different quadratic spaces")
        if d1.kind != d2.kind:
            return Verdict.FALSE
        if d1.kind == InvolutionKind.RADICAL:
            return Verdict.of(conjugate_test_radical(d1, d2))
        if d1.kind == InvolutionKind.NULL:
            return Verdict.of(conjugate_test_null(d1, d2))
        if d1.kind in TRANSVECTION_KINDS:
            return Verdict.of(conjugate_test_transvections(d1, d2))
        return conjugate_test_general(d1, d2)
    except Undecidable as e:
        logger.debug(f"Conjugacy undecided: {e}")
        return Verdict.UNKNOWN


# oracle

def oracle_conjugate(table: GroupTable, a: Isometry, b: Isometry) -> bool:
    table.position(a)
    table.position(b)
    return any(table.conjugate(i, a.matrix) == b.matrix for i in range(table.order))


def conjugacy_class(table: GroupTable, phi: Isometry) -> List[Matrix]:
    return sorted({table.conjugate(i, phi.matrix) for i in range(table.order)})


def centralizer_order(table: GroupTable, phi: Isometry) -> int:
    return table.order // len(conjugacy_class(table, phi))


def involution_classes(table: GroupTable) -> List[List[Isometry]]:
    """Oracle conjugacy classes of the involutions, each sorted, ordered by first member."""
    remaining = {phi.matrix for phi in involutions_of(table)}
    classes = []
    for M in sorted(remaining):
        if M not in remaining:
            continue
        orbit = conjugacy_class(table, Isometry(table.form, M))
        remaining.difference_update(orbit)
        classes.append([Isometry(table.form, N) for N in orbit])
    return classes


def equal_centralizer_classes(table: GroupTable, classes: Optional[List[List[Isometry]]] = None) -> List[Tuple[int, int]]:
    """Pairs of distinct involution classes whose centralizers have equal order."""
    classes = classes if classes is not None else involution_classes(table)
    orders = [table.order // len(c) for c in classes]
    return [(i, j) for i in range(len(classes)) for j in range(i + 1, len(classes)) if orders[i] == orders[j]]


def census(table: GroupTable) -> CensusReport:
    q = table.form
    f = q.field
    classes = involution_classes(table)
    rows = []
    for members in classes:
        rep = members[0]
        rows.append(ClassRow(
            descriptor=classify(rep).to_report(),
            size=len(members),
            centralizer_order=table.order // len(members),
            representative=matrix_codes(f, rep.matrix),
        ))
    count = len(involutions_of(table))
    ok = sum(r.size for r in rows) == count and all(r.size * r.centralizer_order == table.order for r in rows)
    logger.info(f"Census of O({q.format()}, {f.name}): {count} involutions in {len(rows)} classes")
    return CensusReport(
        field=f.name,
        form=q.format(),
        group_order=table.order,
        involution_count=count,
        classes=rows,
        class_equation_ok=ok,
        equal_centralizer_pairs=[list(p) for p in equal_centralizer_classes(table, classes)],
    )


def kind_counts(table: GroupTable) -> Dict[Tuple[InvolutionKind, int], int]:
    """Number of involutions per (kind, residue)."""
    counts: Dict[Tuple[InvolutionKind, int], int] = {}
    for phi in involutions_of(table):
        d = classify(phi)
        key = (d.kind, d.residue)
        counts[key] = counts.get(key, 0) + 1
    return counts


# reduced transvection families

def orthogonal_families(q: QuadForm, length: int) -> List[Tuple[Vector, ...]]:
    """Sets of `length` mutually orthogonal anisotropic monic vectors whose transvection
    product has residue `length`, each listed once in increasing order."""
    f = q.field
    if not f.is_finite:
        raise Undecidable("transvection families over an infinite field")
    candidates = [u for u in projective_points(f, q.dim) if q.eval(u) != f.zero]
    families = []

    def extend(start: int, picked: List[Vector]):
        if len(picked) == length:
            if residual_space(product_of_transvections(q, picked)).dim == length:
                families.append(tuple(picked))
            return
        for i in range(start, len(candidates)):
            u = candidates[i]
            if all(q.bilinear(u, w) == f.zero for w in picked):
                extend(i + 1, picked + [u])

    extend(0, [])
    return families


def equal_products_violations(q: QuadForm, max_length: int = 2) -> List[str]:
    """Reduced families with equal products must span the same space with equivalent
    norm forms; over GF(2) equal spans must in turn give equal products."""
    f = q.field
    by_product: Dict[Matrix, List[Tuple[Vector, ...]]] = {}
    by_span: Dict[Tuple[int, Subspace], List[Matrix]] = {}
    for length in range(1, max_length + 1):
        for fam in orthogonal_families(q, length):
            M = product_of_transvections(q, fam).matrix
            by_product.setdefault(M, []).append(fam)
            by_span.setdefault((length, Subspace.span(f, q.dim, fam)), []).append(M)
    ret = []
    for fams in by_product.values():
        first = fams[0]
        span = Subspace.span(f, q.dim, first)
        norms = [q.eval(u) for u in first]
        for other in fams[1:]:
            if Subspace.span(f, q.dim, other) != span:
                ret.append(f"families {first} and {other} have equal products but different spans")
            elif not norm_forms_equivalent(f, norms, [q.eval(u) for u in other]):
                ret.append(f"families {first} and {other} have equal products but inequivalent norms")
    if f.order == 2:
        for (length, span), products in by_span.items():
            if len(set(products)) > 1:
                ret.append(f"reduced families spanning {span.basis} give {len(set(products))} products")
    return ret
