import pytest

from char2orth import linalg
from char2orth.errors import FormError, Undecidable
from char2orth.quadspace import (
    arf_invariant,
    bilinear,
    bounded_isotropic_search,
    defect,
    eval,
    find_isotropic_vector,
    from_signature,
    is_anisotropic,
    is_isometric,
    nonsingular_completion,
    radical,
    restrict,
    rewrite_equivalences,
    totally_singular_isometric,
    transport,
    witt_decompose,
)


T = (0b10, 1)


def test_eval_examples(gf2, f2t):
    q = from_signature(gf2, [(1, 1)])
    assert eval(q, (1, 1)) == 1
    assert eval(from_signature(gf2, [(0, 0)]), (1, 0)) == 0
    r = from_signature(f2t, diag=[f2t.one, T])
    assert eval(r, (f2t.one, f2t.one)) == (0b11, 1)


def test_bilinear_examples(gf2, gf4):
    h = from_signature(gf2, [(0, 0)])
    assert bilinear(h, (1, 0), (0, 1)) == 1
    d = from_signature(gf4, diag=[1, 0b10])
    assert bilinear(d, (1, 0), (0, 1)) == 0


def test_polarization_identity(gf4, rng):
    q = from_signature(gf4, [(1, 0b10), (0, 0b11)], [0b10])
    for _ in range(50):
        w = tuple(gf4.random_element(rng) for _ in range(q.dim))
        v = tuple(gf4.random_element(rng) for _ in range(q.dim))
        expected = gf4.add(gf4.add(q.eval(linalg.vadd(gf4, w, v)), q.eval(w)), q.eval(v))
        assert q.bilinear(w, v) == expected
        assert q.bilinear(w, w) == 0
        assert q.bilinear(w, v) == q.bilinear(v, w)


def test_radical_examples(gf2, rng):
    assert radical(from_signature(gf2, [(1, 1)])).dim == 0
    assert radical(from_signature(gf2, [(0, 0)], [1])).basis == ((0, 0, 1),)
    q = from_signature(gf2, [(0, 0)], [1])
    moved = transport(q, linalg.random_invertible(gf2, 3, rng))
    rad = radical(moved)
    assert rad.dim == 1
    assert moved.eval(rad.basis[0]) == 1


def test_witt_decompose_examples(gf2, f2t):
    w = witt_decompose(from_signature(gf2, [(1, 1), (1, 1)]))
    assert (w.witt_index, w.defect, w.aniso_pairs, w.aniso_diag) == (2, 0, (), ())
    assert w.verify()

    w = witt_decompose(from_signature(f2t, diag=[f2t.one, T, (0b100, 1)]))
    assert (w.witt_index, w.defect) == (0, 1)
    assert f2t.k2_span_equal(w.aniso_diag, [f2t.one, T])
    assert w.verify()

    w = witt_decompose(from_signature(gf2, diag=[0, 0, 1]))
    assert (w.witt_index, w.defect, w.aniso_diag) == (0, 2, (1,))


def test_witt_decompose_anisotropic_plane(gf2, gf4):
    w = witt_decompose(from_signature(gf2, [(1, 1)]))
    assert w.witt_index == 0 and len(w.aniso_pairs) == 1
    assert w.verify()
    # an anisotropic radical line turns every plane hyperbolic
    w = witt_decompose(from_signature(gf4, [(1, 0b10)], [0b11]))
    assert (w.witt_index, w.aniso_pairs, w.defect) == (1, (), 0)
    assert w.verify()


def test_witt_decompose_ratfunc_nonsingular_is_undecidable(f2t):
    with pytest.raises(Undecidable):
        witt_decompose(from_signature(f2t, [(f2t.one, T)]))


def test_zero_dimensional_form(gf2):
    q = from_signature(gf2)
    w = witt_decompose(q)
    assert (w.witt_index, w.defect) == (0, 0)
    assert is_anisotropic(q)
    assert radical(q).dim == 0


def test_arf_invariant_examples(gf2):
    assert arf_invariant(from_signature(gf2, [(0, 0)])) == 0
    assert arf_invariant(from_signature(gf2, [(1, 1)])) == 1
    assert arf_invariant(from_signature(gf2, [(1, 1), (1, 1)])) == 0
    with pytest.raises(FormError):
        arf_invariant(from_signature(gf2, [(0, 0)], [1]))


def test_is_isometric_examples(gf2, f2t):
    assert is_isometric(from_signature(gf2, [(1, 1), (1, 1)]), from_signature(gf2, [(0, 0), (0, 0)]))
    assert not is_isometric(from_signature(gf2, [(1, 1)]), from_signature(gf2, [(0, 0)]))
    first = from_signature(f2t, diag=[f2t.one, T])
    second = from_signature(f2t, diag=[T, (0b1000, 1)])
    assert not is_isometric(first, second)


CORPUS = [
    ("gf2", [(0, 0)], []),
    ("gf2", [(1, 1)], []),
    ("gf2", [(1, 1), (1, 1)], []),
    ("gf2", [(0, 0), (1, 1)], []),
    ("gf2", [(1, 0)], [1]),
    ("gf2", [(1, 1)], [0]),
    ("gf2", [], [0, 1, 1]),
    ("gf2", [(0, 0)], [0, 1]),
    ("gf2", [(1, 1), (0, 0)], [1]),
    ("gf4", [(1, 0b10)], []),
    ("gf4", [(0b10, 0b10)], []),
    ("gf4", [(1, 1), (0b10, 0b11)], []),
    ("gf4", [(0b10, 0b11)], [0b10]),
    ("gf4", [], [1, 0b10, 0b11]),
    ("gf4", [(1, 1)], [0, 0]),
]


@pytest.mark.parametrize("name,pairs,diag", CORPUS)
def test_witt_invariance_under_basis_change(name, pairs, diag, gf2, gf4, rng):
    f = {"gf2": gf2, "gf4": gf4}[name]
    q = from_signature(f, pairs, diag)
    reference = witt_decompose(q)
    assert reference.verify()
    for _ in range(25):
        moved = transport(q, linalg.random_invertible(f, q.dim, rng))
        w = witt_decompose(moved)
        assert w.verify()
        assert (w.witt_index, w.defect) == (reference.witt_index, reference.defect)
        assert is_isometric(q, moved)


@pytest.mark.parametrize("name,pairs,diag", CORPUS)
def test_rewrites_are_isometric(name, pairs, diag, gf2, gf4):
    f = {"gf2": gf2, "gf4": gf4}[name]
    q = from_signature(f, pairs, diag)
    for rewritten in rewrite_equivalences(q):
        assert is_isometric(q, rewritten)


def test_rewrite_examples(gf2, gf4):
    outs = [r.signature for r in rewrite_equivalences(from_signature(gf2, [(1, 1)]))]
    assert any(s.pairs == ((1, 1),) for s in outs)
    outs = [r.signature for r in rewrite_equivalences(from_signature(gf2, [(1, 0), (1, 1)]))]
    assert any(s.pairs == ((0, 0), (1, 1)) for s in outs)
    outs = rewrite_equivalences(from_signature(gf4, [(1, 0b10)]), alpha=1)
    assert any(r.signature.pairs == ((1, 0b10),) for r in outs)


def test_nonsingular_completion_examples(gf2):
    h = from_signature(gf2, [(0, 0)])
    c = nonsingular_completion(h, [(1, 0)])
    assert c.V == ((0, 1),)

    q = from_signature(gf2, [(1, 1), (1, 1)])
    u = (1, 0, 1, 1)
    c = nonsingular_completion(q, [u])
    assert q.bilinear(u, c.V[0]) == 1

    q = from_signature(gf2, [(1, 0)])
    c = nonsingular_completion(q, [(1, 0)])
    assert c.V == ((0, 1),) and q.eval(c.V[0]) == 0


def test_nonsingular_completion_pairing(gf4):
    q = from_signature(gf4, [(0, 0), (0, 0), (1, 0b10)])
    U = [(1, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0)]
    c = nonsingular_completion(q, U)
    assert c.pairing(q) == linalg.identity(gf4, 2)
    assert all(q.bilinear(v, w) == 0 for v in c.V for w in c.V)
    # u_1 is isotropic so its partner is too
    assert q.eval(c.V[0]) == 0


def test_nonsingular_completion_rejects_radical(gf2):
    q = from_signature(gf2, [(0, 0)], [1])
    with pytest.raises(FormError):
        nonsingular_completion(q, [(0, 0, 1)])
    with pytest.raises(FormError):
        nonsingular_completion(q, [(1, 0, 0), (0, 1, 0)])


@pytest.mark.parametrize("diag", [[1], [1, 0b10], [1, 0b10, 0b11], [0b10, 0b11], [1, 1]])
def test_totally_singular_anisotropy_criterion(gf4, diag):
    q = from_signature(gf4, diag=diag)
    assert is_anisotropic(q) == (find_isotropic_vector(q) is None)


def test_totally_singular_isometric(gf4, f2t):
    one = f2t.one
    t2, t3 = f2t.mul(T, T), f2t.mul(T, f2t.mul(T, T))
    assert totally_singular_isometric(f2t, [one, T], [t2, t3])
    assert not totally_singular_isometric(f2t, [one, T], [T, t3])
    assert not totally_singular_isometric(f2t, [one], [one, one])
    assert totally_singular_isometric(gf4, [1, 0b10], [0b11, 1])


def test_ratfunc_anisotropy(f2t):
    q = from_signature(f2t, diag=[f2t.one, T])
    assert is_anisotropic(q)
    assert bounded_isotropic_search(q, 2) is None
    r = from_signature(f2t, diag=[f2t.one, T, (0b100, 1)])
    assert not is_anisotropic(r)
    z = bounded_isotropic_search(r, 1)
    assert z is not None and r.eval(z) == f2t.zero
    assert defect(r) == 1


def test_restrict_to_subspace(gf2):
    q = from_signature(gf2, [(1, 1), (0, 0)])
    small = restrict(q, [(1, 0, 0, 0), (0, 0, 1, 1)])
    assert small.coeffs == ((1, 0), (0, 1))
