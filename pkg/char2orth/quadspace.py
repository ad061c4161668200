"""
Quadratic forms over fields of characteristic 2

A QuadForm is held by its upper-triangular coefficient matrix, so that

    q(w) = sum_i Q[i][i] w_i^2 + sum_{i<j} Q[i][j] w_i w_j

and B(w, w') = q(w + w') + q(w) + q(w') is the alternating polar form. Forms built
from a quadratic signature [a_1,b_1] _|_ ... _|_ <c_1, ...> keep the signature for
display and block-aware constructors; the basis order is x_1, y_1, ..., x_r, y_r,
g_1, ..., g_s.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, FormError, Undecidable
from .field import Element, Field
from .linalg import Matrix, Subspace, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Signature:
    """[a_1,b_1] _|_ ... _|_ [a_r,b_r] _|_ <c_1, ..., c_s>"""

    pairs: Tuple[Tuple[Element, Element], ...] = ()
    diag: Tuple[Element, ...] = ()

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def s(self) -> int:
        return len(self.diag)

    @property
    def dim(self) -> int:
        return 2 * self.r + self.s

    def to_form(self, f: Field) -> "QuadForm":
        n = self.dim
        rows = [[f.zero] * n for _ in range(n)]
        for i, (a, b) in enumerate(self.pairs):
            rows[2 * i][2 * i] = a
            rows[2 * i][2 * i + 1] = f.one
            rows[2 * i + 1][2 * i + 1] = b
        for j, c in enumerate(self.diag):
            k = 2 * self.r + j
            rows[k][k] = c
        return QuadForm(f, tuple(tuple(r) for r in rows), self)

    def format(self, f: Field) -> str:
        terms = [f"[{f.format(a)},{f.format(b)}]" for a, b in self.pairs]
        if self.diag:
            terms.append("<" + ",".join(f.format(c) for c in self.diag) + ">")
        return "_|_".join(terms) if terms else "<>"


@dataclass(frozen=True)
class QuadForm:
    field: Field
    coeffs: Tuple[Tuple[Element, ...], ...]
    signature: Optional[Signature] = dc_field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def r(self) -> int:
        if self.signature is None:
            raise FormError("form carries no signature")
        return self.signature.r

    @property
    def s(self) -> int:
        if self.signature is None:
            raise FormError("form carries no signature")
        return self.signature.s

    def check(self, w: Sequence) -> None:
        if len(w) != self.dim:
            raise DimensionMismatch(f"vector of length {len(w)} for a form of dimension {self.dim}")

    def eval(self, w: Sequence) -> Element:
        self.check(w)
        f = self.field
        ret = f.zero
        for i in range(self.dim):
            if w[i] == f.zero:
                continue
            row = self.coeffs[i]
            if row[i] != f.zero:
                ret = f.add(ret, f.mul(row[i], f.square(w[i])))
            for j in range(i + 1, self.dim):
                if row[j] != f.zero and w[j] != f.zero:
                    ret = f.add(ret, f.mul(row[j], f.mul(w[i], w[j])))
        return ret

    def bilinear(self, w: Sequence, v: Sequence) -> Element:
        self.check(w)
        self.check(v)
        f = self.field
        ret = f.zero
        for i in range(self.dim):
            row = self.coeffs[i]
            for j in range(i + 1, self.dim):
                c = row[j]
                if c != f.zero:
                    t = f.add(f.mul(w[i], v[j]), f.mul(w[j], v[i]))
                    if t != f.zero:
                        ret = f.add(ret, f.mul(c, t))
        return ret

    def gram(self) -> Matrix:
        f = self.field
        n = self.dim
        cols = []
        for j in range(n):
            cols.append(tuple(
                f.zero if i == j else (self.coeffs[i][j] if i < j else self.coeffs[j][i])
                for i in range(n)
            ))
        return tuple(cols)

    def basis_vector(self, i: int) -> Vector:
        return linalg.unit(self.field, self.dim, i)

    def format(self) -> str:
        if self.signature is not None:
            return self.signature.format(self.field)
        f = self.field
        return "Q" + repr([[f.format(c) for c in row] for row in self.coeffs])


# construction

def from_signature(f: Field, pairs: Sequence[Tuple[Element, Element]] = (), diag: Sequence[Element] = ()) -> QuadForm:
    return Signature(tuple(tuple(p) for p in pairs), tuple(diag)).to_form(f)


def form_from_vectors(q: QuadForm, vectors: Sequence[Sequence]) -> QuadForm:
    """The form z -> q(sum z_i vectors_i) in the coordinates of the given vectors."""
    f = q.field
    n = len(vectors)
    rows = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = q.eval(vectors[i])
        for j in range(i + 1, n):
            rows[i][j] = q.bilinear(vectors[i], vectors[j])
    return QuadForm(f, tuple(tuple(r) for r in rows))


def transport(q: QuadForm, P: Matrix) -> QuadForm:
    """q expressed in the basis given by the columns of P."""
    return form_from_vectors(q, P)


def restrict(q: QuadForm, basis: Sequence[Sequence]) -> QuadForm:
    return form_from_vectors(q, basis)


def eval(q: QuadForm, w: Sequence) -> Element:
    return q.eval(w)


def bilinear(q: QuadForm, w: Sequence, v: Sequence) -> Element:
    return q.bilinear(w, v)


# radical and defect

def radical(q: QuadForm) -> Subspace:
    """Kernel of the Gram matrix of B."""
    return Subspace.span(q.field, q.dim, linalg.kernel(q.field, q.gram()))


def is_nonsingular(q: QuadForm) -> bool:
    return radical(q).dim == 0


def is_totally_singular(q: QuadForm) -> bool:
    return radical(q).dim == q.dim


def semilinear_kernel(f: Field, vectors: Sequence[Sequence], norms: Sequence[Element]) -> List[Vector]:
    """Vectors sum z_j vectors_j with sum z_j^2 norms_j = 0.

    The norm map on a totally singular space is Frobenius-semilinear; its zero set is
    the kernel of z -> (sum_j z_j h_jl)_l with (h_jl) the k^2-coordinates of the norms.
    """
    if not vectors:
        return []
    coords = [f.k2_coordinates(c) for c in norms]
    M = tuple(tuple(h) for h in coords)
    n = len(vectors[0])
    return [linalg.combine(f, z, vectors, n) for z in linalg.kernel(f, M)]


def defect_subspace(q: QuadForm) -> Subspace:
    """The isotropic vectors of rad(W)."""
    f = q.field
    rad = radical(q).basis
    return Subspace.span(f, q.dim, semilinear_kernel(f, rad, [q.eval(g) for g in rad]))


def defect(q: QuadForm) -> int:
    return defect_subspace(q).dim


def greedy_extension(f: Field, fixed: Sequence[Sequence], candidates: Sequence[Sequence]) -> List[Vector]:
    """Candidates kept in order whenever they are independent of fixed and earlier picks."""
    current = list(fixed)
    r = linalg.rank(f, current) if current else 0
    picked = []
    for v in candidates:
        r2 = linalg.rank(f, current + [v])
        if r2 > r:
            current.append(v)
            picked.append(tuple(v))
            r = r2
    return picked


def anisotropic_radical_part(q: QuadForm) -> List[Vector]:
    """Radical basis vectors completing the defect to rad(W), picked greedily."""
    f = q.field
    return greedy_extension(f, defect_subspace(q).basis, radical(q).basis)


# isotropy

def projective_points(f: Field, n: int) -> Iterator[Vector]:
    """Nonzero vectors of k^n whose first nonzero coordinate is 1."""
    elems = f.enumerate()
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield (f.zero,) * lead + (f.one,) + tail


def find_isotropic_in_span(q: QuadForm, vectors: Sequence[Sequence]) -> Optional[Vector]:
    f = q.field
    if not f.is_finite:
        raise Undecidable("isotropy search over an infinite field")
    small = restrict(q, vectors)
    n = q.dim
    for z in projective_points(f, len(vectors)):
        if small.eval(z) == f.zero:
            return linalg.combine(f, z, vectors, n)
    return None


def find_isotropic_vector(q: QuadForm) -> Optional[Vector]:
    """Exhaustive projective scan over a finite field."""
    return find_isotropic_in_span(q, [q.basis_vector(i) for i in range(q.dim)])


def bounded_isotropic_search(q: QuadForm, max_degree: int) -> Optional[Vector]:
    """Search coordinate vectors of polynomials of degree <= max_degree (any field)."""
    f = q.field
    polys = [f.from_poly(p) for p in range(1 << (max_degree + 1))]
    for z in itertools.product(polys, repeat=q.dim):
        if not linalg.is_zero(f, z) and q.eval(z) == f.zero:
            return z
    return None


def is_anisotropic(q: QuadForm) -> bool:
    f = q.field
    if is_totally_singular(q):
        norms = [q.eval(q.basis_vector(i)) for i in range(q.dim)]
        return f.k2_linear_rank(norms) == q.dim if q.dim else True
    if not f.is_finite:
        raise Undecidable("anisotropy of a form with a nonsingular part over f2t")
    return find_isotropic_vector(q) is None


# Witt decomposition

@dataclass(frozen=True)
class WittDecomposition:
    form: QuadForm
    witt_index: int
    defect: int
    aniso_pairs: Tuple[Tuple[Element, Element], ...]
    aniso_diag: Tuple[Element, ...]
    # columns: x_1, y_1, ..., x_m, y_m, anisotropic pairs, anisotropic radical, defect
    change_of_basis: Matrix

    @property
    def normal_form(self) -> Signature:
        f = self.form.field
        pairs = ((f.zero, f.zero),) * self.witt_index + self.aniso_pairs
        diag = self.aniso_diag + (f.zero,) * self.defect
        return Signature(pairs, diag)

    def verify(self) -> bool:
        """Reassembling through change_of_basis reproduces q exactly."""
        f = self.form.field
        if not linalg.is_invertible(f, self.change_of_basis):
            return False
        return transport(self.form, self.change_of_basis) == self.normal_form.to_form(f)


def _hyperbolic_partner(q: QuadForm, x: Vector, span: Sequence[Vector]) -> Vector:
    f = q.field
    for b in span:
        c = q.bilinear(x, b)
        if c != f.zero:
            y = linalg.vscale(f, f.inv(c), b)
            # y + q(y) x is isotropic with B(x, y) = 1
            return linalg.vadd(f, y, linalg.vscale(f, q.eval(y), x))
    raise FormError("isotropic vector is in the radical")


def _project_off(q: QuadForm, e: Vector, g: Vector, vectors: Sequence[Vector]) -> List[Vector]:
    """Move vectors into the B-orthogonal complement of the plane (e, g), B(e, g) = 1."""
    f = q.field
    ret = []
    for b in vectors:
        b2 = linalg.vadd(f, b, linalg.vscale(f, q.bilinear(b, g), e))
        b2 = linalg.vadd(f, b2, linalg.vscale(f, q.bilinear(b, e), g))
        ret.append(b2)
    return ret


def witt_decompose(q: QuadForm) -> WittDecomposition:
    f = q.field
    n = q.dim
    rad = list(radical(q).basis)
    if not f.is_finite and len(rad) != n:
        raise Undecidable("Witt decomposition of a nonsingular part over f2t")
    defect_basis = list(defect_subspace(q).basis)
    aniso_rad = greedy_extension(f, defect_basis, rad)
    current = [tuple(v) for v in linalg.complement(f, rad, n)]

    pairs: List[Vector] = []
    aniso_plane: List[Vector] = []
    while current:
        if len(current) >= 4:
            # a form in three variables over a finite field is isotropic
            x = find_isotropic_in_span(q, current[:3])
        else:
            x = find_isotropic_in_span(q, current)
        if x is None and aniso_rad:
            e = current[0]
            g = aniso_rad[0]
            x = linalg.vadd(f, e, linalg.vscale(f, f.sqrt(f.div(q.eval(e), q.eval(g))), g))
        if x is None:
            e = current[0]
            c = q.bilinear(current[0], current[1])
            aniso_plane = [e, linalg.vscale(f, f.inv(c), current[1])]
            break
        y = _hyperbolic_partner(q, x, current)
        pairs.extend([x, y])
        projected = _project_off(q, x, y, current)
        current = greedy_extension(f, pairs + rad, projected)

    change = tuple(pairs + aniso_plane + aniso_rad + defect_basis)
    aniso_pairs = ()
    if aniso_plane:
        aniso_pairs = ((q.eval(aniso_plane[0]), q.eval(aniso_plane[1])),)
    decomposition = WittDecomposition(
        form=q,
        witt_index=len(pairs) // 2,
        defect=len(defect_basis),
        aniso_pairs=aniso_pairs,
        aniso_diag=tuple(q.eval(g) for g in aniso_rad),
        change_of_basis=tuple(tuple(v) for v in change),
    )
    logger.debug(f"Witt decomposition of {q.format()}: m={decomposition.witt_index}, d={decomposition.defect}")
    return decomposition


def symplectic_basis(q: QuadForm, vectors: Sequence[Sequence]) -> List[Tuple[Vector, Vector]]:
    """Pairs (e_i, f_i) with B(e_i, f_j) = delta_ij spanning the given nonsingular span."""
    f = q.field
    current = [tuple(v) for v in vectors]
    ret = []
    while current:
        e = current[0]
        partner = None
        for b in current[1:]:
            c = q.bilinear(e, b)
            if c != f.zero:
                partner = linalg.vscale(f, f.inv(c), b)
                break
        if partner is None:
            raise FormError("span is not nonsingular")
        ret.append((e, partner))
        projected = _project_off(q, e, partner, current)
        flat = [v for pair in ret for v in pair]
        current = greedy_extension(f, flat, projected)
    return ret


def arf_invariant(q: QuadForm) -> Element:
    """Class of sum q(e_i) q(f_i) modulo {x^2 + x} over a symplectic basis."""
    f = q.field
    if not f.is_finite:
        raise Undecidable("Arf invariant over f2t")
    if not is_nonsingular(q):
        raise FormError("Arf invariant needs a nonsingular form")
    total = f.sum(f.mul(q.eval(e), q.eval(g)) for e, g in symplectic_basis(q, [q.basis_vector(i) for i in range(q.dim)]))
    return f.artin_schreier_class(total)


def is_isometric(q1: QuadForm, q2: QuadForm) -> bool:
    f = q1.field
    f.check_same(q2.field)
    if q1.dim != q2.dim:
        return False
    w1, w2 = witt_decompose(q1), witt_decompose(q2)
    if (w1.witt_index, w1.defect, len(w1.aniso_pairs), len(w1.aniso_diag)) != \
            (w2.witt_index, w2.defect, len(w2.aniso_pairs), len(w2.aniso_diag)):
        return False
    if w1.aniso_pairs:
        a1 = f.artin_schreier_class(f.sum(f.mul(a, b) for a, b in w1.aniso_pairs))
        a2 = f.artin_schreier_class(f.sum(f.mul(a, b) for a, b in w2.aniso_pairs))
        if a1 != a2:
            return False
    return f.k2_span_equal(w1.aniso_diag, w2.aniso_diag)


def totally_singular_isometric(f: Field, norms1: Sequence[Element], norms2: Sequence[Element]) -> bool:
    """<norms1> and <norms2> are isometric iff same length and equal k^2-spans."""
    return len(norms1) == len(norms2) and f.k2_span_equal(norms1, norms2)


# completions

@dataclass(frozen=True)
class Completion:
    U: Tuple[Vector, ...]
    V: Tuple[Vector, ...]

    def pairing(self, q: QuadForm) -> Matrix:
        return tuple(tuple(q.bilinear(u, v) for u in self.U) for v in self.V)


def nonsingular_completion(q: QuadForm, U: Sequence[Sequence]) -> Completion:
    """V with B(u_i, v_j) = delta_ij, V totally B-isotropic and q(v_i) = 0 when q(u_i) = 0."""
    f = q.field
    U = [tuple(u) for u in U]
    for i, u in enumerate(U):
        for w in U[i:]:
            if q.bilinear(u, w) != f.zero:
                raise FormError("U is not totally singular")
    rad = list(radical(q).basis)
    if linalg.rank(f, U + rad) != len(U) + len(rad):
        raise FormError("U meets the radical")
    # rows of the linear system: the functionals B(u_i, .)
    functionals = linalg.from_rows([tuple(q.bilinear(u, q.basis_vector(j)) for j in range(q.dim)) for u in U])
    V: List[Vector] = []
    for j in range(len(U)):
        v = linalg.solve(f, functionals, linalg.unit(f, len(U), j))
        if v is None:
            raise FormError("U has no nonsingular completion")
        V.append(v)
    for j in range(len(V)):
        v = V[j]
        for i in range(j):
            c = q.bilinear(v, V[i])
            if c != f.zero:
                v = linalg.vadd(f, v, linalg.vscale(f, c, U[i]))
        V[j] = v
    for i, u in enumerate(U):
        if q.eval(u) == f.zero:
            V[i] = linalg.vadd(f, V[i], linalg.vscale(f, q.eval(V[i]), u))
    return Completion(tuple(U), tuple(V))


# isometry rewrites

def rewrite_equivalences(q: QuadForm, alpha: Optional[Element] = None) -> List[QuadForm]:
    """One application of each signature rewrite rule at each position."""
    if q.signature is None:
        raise FormError("rewrites act on signature forms")
    f = q.field
    sig = q.signature
    if alpha is None:
        alpha = f.generator
    a2 = f.square(alpha)
    a2inv = f.inv(a2)
    out: List[Signature] = []
    for i, (a, b) in enumerate(sig.pairs):
        for new in ((a, f.add(f.add(a, b), f.one)), (b, a), (f.mul(a2, a), f.mul(a2inv, b))):
            pairs = list(sig.pairs)
            pairs[i] = new
            out.append(Signature(tuple(pairs), sig.diag))
    for i, j in itertools.combinations(range(sig.r), 2):
        (a, a1), (b, b1) = sig.pairs[i], sig.pairs[j]
        pairs = list(sig.pairs)
        pairs[i] = (f.add(a, b), a1)
        pairs[j] = (b, f.add(a1, b1))
        out.append(Signature(tuple(pairs), sig.diag))
    seen = set()
    forms = []
    for s in out:
        if s not in seen:
            seen.add(s)
            forms.append(s.to_form(f))
    return forms
