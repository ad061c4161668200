import pytest

from char2orth import linalg
from char2orth.errors import FormError, NormalizationError, NotAnInvolution, Undecidable
from char2orth.field import GF2, GF4
from char2orth.involutions import (
    are_conjugate,
    census,
    centralizer_order,
    classify,
    conjugate_test_general,
    conjugate_test_null,
    conjugate_test_radical,
    conjugate_test_transvections,
    decompose_triple,
    equal_centralizer_classes,
    equal_products_violations,
    find_conjugator,
    inducing_vectors,
    involution_classes,
    kernel_arf,
    kind_counts,
    normalize_triple,
    oracle_conjugate,
    orthogonal_families,
    reassemble,
)
from char2orth.models import InvolutionKind, Verdict
from char2orth.orthogroup import (
    basic_null_on_pairs,
    basic_radical,
    enumerate_group,
    identity,
    involutions_of,
    make_isometry,
    orthogonal_transvection,
    product_of_transvections,
)
from char2orth.quadspace import from_signature

DIAG = InvolutionKind.DIAGONAL
HYP = InvolutionKind.HYPERBOLIC
NULL = InvolutionKind.NULL
RAD = InvolutionKind.RADICAL


def hyperbolic_reflection(gf2):
    """z -> z + B(x, z) g on [1,1] _|_ <0>."""
    q = from_signature(gf2, [(1, 1)], [0])
    return make_isometry(q, ((1, 0, 0), (0, 1, 1), (0, 0, 1)))


def crafted_gf4(gf4):
    """On [1,1] _|_ <1> over GF(4): x -> x, y -> t x + y + g, g -> g."""
    q = from_signature(gf4, [(1, 1)], [1])
    return make_isometry(q, ((1, 0, 0), (2, 1, 1), (0, 0, 1)))


class TestClassify:
    def test_not_an_involution(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        with pytest.raises(NotAnInvolution) as err:
            classify(make_isometry(q, ((0, 1), (1, 1))))
        assert err.value.witness == (1, 0)
        with pytest.raises(NotAnInvolution) as err:
            classify(identity(q))
        assert err.value.witness is None

    def test_single_transvection(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        d = classify(orthogonal_transvection(q, (1, 0)))
        assert d.kind == DIAG
        assert (d.residue, d.length, d.dim_u) == (1, 1, 1)
        assert d.inducing == ((1, 0),)
        assert d.norm_signature == (1,)

    def test_hyperbolic(self, gf2):
        d = classify(hyperbolic_reflection(gf2))
        assert d.kind == HYP
        assert (d.residue, d.length) == (1, 2)
        assert d.inducing == ((1, 0, 0), (1, 0, 1))
        assert product_of_transvections(d.form, d.inducing) == d.isometry

    def test_radical_swap(self, gf2):
        q = from_signature(gf2, diag=[0, 0])
        d = classify(basic_radical(q, (1, 0), (0, 1)))
        assert d.kind == RAD
        assert (d.residue, d.length) == (1, 1)
        assert d.kernel_norms == (0,)
        assert d.dim_u is None
        assert kernel_arf(d) is None

    def test_null(self, gf2):
        q = from_signature(gf2, [(0, 0)] * 4)
        one = classify(basic_null_on_pairs(q, 0, 1))
        two = classify(basic_null_on_pairs(q, 0, 1).compose(basic_null_on_pairs(q, 2, 3)))
        assert (one.kind, one.residue, one.length) == (NULL, 2, 1)
        assert (two.kind, two.residue, two.length) == (NULL, 4, 2)

    def test_hyperbolic_of_residue_two(self, gf2):
        q = from_signature(gf2, [(1, 1), (1, 1)], [0])
        x1, x2, g = q.basis_vector(0), q.basis_vector(2), q.basis_vector(4)
        phi = product_of_transvections(q, [x1, linalg.vadd(gf2, x1, g), x2])
        d = classify(phi)
        assert d.kind == HYP
        assert (d.residue, d.length) == (2, 3)
        assert d.inducing[0] == x1

    def test_descriptor_report(self, gf4):
        d = classify(crafted_gf4(gf4))
        report = d.to_report()
        assert report.field == "gf4"
        assert report.kind == d.kind
        assert report.residue == 1

    @pytest.mark.parametrize("pairs, diag, expected", [
        ([(0, 0), (0, 0)], [], {(DIAG, 1): 6, (DIAG, 2): 9, (NULL, 2): 6}),
        ([(0, 0), (1, 1)], [], {(DIAG, 1): 10, (DIAG, 2): 15}),
        ([(1, 1)], [0], {(DIAG, 1): 6, (HYP, 1): 3}),
        ([(0, 0), (0, 0)], [1], {(DIAG, 1): 15, (DIAG, 2): 45, (NULL, 2): 15}),
    ])
    def test_kind_counts(self, gf2, pairs, diag, expected):
        table = enumerate_group(from_signature(gf2, pairs, diag))
        assert kind_counts(table) == expected

    def test_inducing_sets_reproduce(self, gf4):
        table = enumerate_group(from_signature(gf4, [(1, 2)], [1]))
        for phi in involutions_of(table):
            d = classify(phi)
            if d.kind in (DIAG, HYP):
                assert product_of_transvections(d.form, d.inducing) == phi
                assert all(d.form.eval(u) != 0 for u in d.inducing)

    def test_inducing_vectors(self, gf2):
        q = from_signature(gf2, [(0, 0), (1, 1)])
        phi = product_of_transvections(q, [(1, 1, 0, 0), (0, 0, 1, 0)])
        us = inducing_vectors(phi)
        assert len(us) == 2
        assert product_of_transvections(q, us) == phi
        with pytest.raises(FormError):
            inducing_vectors(basic_null_on_pairs(from_signature(gf2, [(0, 0), (0, 0)]), 0, 1))

    def test_infinite_field_hyperbolic_is_undecidable(self, f2t):
        q = from_signature(f2t, [(f2t.one, f2t.one)], [f2t.zero])
        one, zero = f2t.one, f2t.zero
        phi = make_isometry(q, ((one, zero, zero), (zero, one, one), (zero, zero, one)))
        with pytest.raises(Undecidable):
            classify(phi)


class TestTriple:
    def test_hyperbolic_blocks(self, gf2):
        T = decompose_triple(hyperbolic_reflection(gf2))
        assert (T.s, T.t) == (1, 2)
        assert T.rad_basis == ((0, 0, 1),)
        assert T.rho == ((1,),)
        assert T.tau == linalg.identity(gf2, 2)
        assert T.Y == ((0,), (1,))
        assert T.violations() == []
        assert reassemble(T) == hyperbolic_reflection(gf2)

    def test_nonsingular_space(self, gf2):
        q = from_signature(gf2, [(0, 0), (0, 0)])
        phi = basic_null_on_pairs(q, 0, 1)
        T = decompose_triple(phi)
        assert (T.s, T.t) == (0, 4)
        assert T.tau == phi.matrix

    def test_laws_on_all_involutions(self, gf2, gf4):
        for q in (from_signature(gf2, [(0, 0)], [0, 1]), from_signature(gf4, [(1, 1)], [1])):
            for phi in involutions_of(enumerate_group(q)):
                T = decompose_triple(phi)
                assert T.violations() == []
                assert reassemble(T) == phi

    def test_broken_triple_is_reported(self, gf2):
        T = decompose_triple(hyperbolic_reflection(gf2))
        broken = type(T)(T.form, T.basis, T.s, T.rho, T.Y, ((0, 1), (1, 0)))
        assert "Y != rho Y tau" in broken.violations()


class TestNormalize:
    def test_crafted_gf4(self, gf4):
        N = normalize_triple(decompose_triple(crafted_gf4(gf4)))
        assert N.scalars == (2,)
        assert N.inducing == ((1, 0, 3),)
        assert N.duals == ((0, 1, 0),)
        assert N.complement == ()
        assert N.source.form.eval(N.inducing[0]) == 3
        assert N.violations() == []

    def test_mixed_residue(self, gf2):
        q = from_signature(gf2, [(1, 1), (1, 1)], [0])
        x1, x2, g = q.basis_vector(0), q.basis_vector(2), q.basis_vector(4)
        phi = product_of_transvections(q, [x1, linalg.vadd(gf2, x1, g), x2])
        N = normalize_triple(decompose_triple(phi))
        assert N.inducing == (x2,)
        assert len(N.complement) == 2
        assert N.violations() == []

    def test_alternating_residual_form(self, gf2):
        q = from_signature(gf2, [(0, 0), (0, 0)])
        with pytest.raises(NormalizationError):
            normalize_triple(decompose_triple(basic_null_on_pairs(q, 0, 1)))

    def test_all_involutions(self, gf2, gf4):
        for q in (from_signature(gf2, [(1, 1)], [0]), from_signature(gf4, [(1, 1)], [1])):
            for phi in involutions_of(enumerate_group(q)):
                try:
                    N = normalize_triple(decompose_triple(phi))
                except NormalizationError:
                    continue
                assert N.violations() == []


class TestPredicates:
    def test_null(self, gf2):
        q = from_signature(gf2, [(0, 0)] * 4)
        a = basic_null_on_pairs(q, 0, 1)
        b = basic_null_on_pairs(q, 2, 3)
        assert conjugate_test_null(a, b)
        assert not conjugate_test_null(a, a.compose(b))
        assert are_conjugate(a, b) == Verdict.TRUE

    def test_radical(self, gf2):
        q = from_signature(gf2, diag=[0, 0, 0, 0])
        e = q.basis_vector
        a = basic_radical(q, e(0), e(1))
        b = basic_radical(q, e(2), e(3))
        assert conjugate_test_radical(a, b)
        assert not conjugate_test_radical(a, a.compose(b))

    def test_kind_mismatch(self, gf2):
        q = from_signature(gf2, [(1, 1), (1, 1)], [0])
        x1, x2, g = q.basis_vector(0), q.basis_vector(2), q.basis_vector(4)
        hyp = product_of_transvections(q, [x1, linalg.vadd(gf2, x1, g), x2])
        diag = product_of_transvections(q, [x1, x2])
        assert classify(diag).kind == DIAG
        assert classify(diag).residue == classify(hyp).residue
        assert are_conjugate(hyp, diag) == Verdict.FALSE
        assert conjugate_test_transvections(diag, product_of_transvections(q, [x2, x1]))
        with pytest.raises(FormError):
            conjugate_test_null(hyp, diag)

    def test_different_spaces(self, gf2):
        a = orthogonal_transvection(from_signature(gf2, [(1, 1)]), (1, 0))
        b = orthogonal_transvection(from_signature(gf2, [(1, 0)]), (1, 0))
        with pytest.raises(FormError):
            are_conjugate(a, b)

    def test_transvections_over_f2t(self, f2t):
        t = f2t.generator
        q = from_signature(f2t, [(f2t.one, f2t.one)], [f2t.one, t])
        x, y = q.basis_vector(0), q.basis_vector(1)
        a = orthogonal_transvection(q, x)
        b = orthogonal_transvection(q, linalg.vscale(f2t, t, x))
        c = orthogonal_transvection(q, linalg.vadd(f2t, x, y))
        assert a == b
        assert are_conjugate(a, c) == Verdict.TRUE

    def test_general_is_unknown_over_f2t(self, f2t):
        q = from_signature(f2t, [(f2t.one, f2t.one)], [f2t.zero])
        one, zero = f2t.one, f2t.zero
        phi = make_isometry(q, ((one, zero, zero), (zero, one, one), (zero, zero, one)))
        psi = orthogonal_transvection(q, q.basis_vector(0))
        assert are_conjugate(phi, psi) == Verdict.UNKNOWN
        assert conjugate_test_general(phi, phi) == Verdict.TRUE


FORMS = [
    (GF2, [(1, 1)], []),
    (GF2, [(0, 0), (1, 1)], []),
    (GF2, [(0, 0), (0, 0)], []),
    (GF2, [(1, 1)], [0]),
    (GF2, [], [0, 0]),
    (GF2, [(0, 0)], [1]),
    (GF2, [], [0, 0, 1, 1]),
    (GF2, [(0, 0)], [0, 1]),
    (GF4, [(0, 0), (0, 0)], []),
    (GF4, [(0, 0)], [0, 1]),
    (GF4, [(0, 0)], [1, 0b10]),
    (GF4, [], [0, 0, 1]),
]


@pytest.mark.parametrize("field, pairs, diag", FORMS)
def test_predicates_match_oracle(field, pairs, diag):
    table = enumerate_group(from_signature(field, pairs, diag))
    classes = involution_classes(table)
    for i, members in enumerate(classes):
        for j, others in enumerate(classes):
            for b in others:
                assert are_conjugate(members[0], b) == Verdict.of(i == j)


@pytest.mark.parametrize("pairs, diag", [([(0, 0)], [0, 1]), ([], [0, 0, 1])])
def test_conjugators_over_gf4(gf4, pairs, diag):
    table = enumerate_group(from_signature(gf4, pairs, diag))
    for members in involution_classes(table):
        rep = members[0]
        radical = classify(rep).kind == RAD
        for b in members:
            verdict, g = find_conjugator(rep, b)
            assert verdict == Verdict.TRUE
            assert g in table
            assert g.compose(rep) == b.compose(g)
            if radical:
                assert conjugate_test_radical(rep, b)


def test_radical_classes(gf2):
    table = enumerate_group(from_signature(gf2, diag=[0, 0, 1, 1]))
    kinds = {classify(c[0]).kind for c in involution_classes(table)}
    assert kinds == {RAD}
    assert len(involution_classes(table)) == 3

    table = enumerate_group(from_signature(gf2, [(0, 0)], [0, 1]))
    radical = [c for c in involution_classes(table) if classify(c[0]).kind == RAD]
    assert sorted(len(c) for c in radical) == [1, 3]
    arfs = {kernel_arf(classify(c[0])) for c in radical}
    assert len(arfs) == 2 and None not in arfs
    hyperbolic = [c for c in involution_classes(table) if classify(c[0]).kind == HYP]
    assert len(hyperbolic) == 1


@pytest.mark.parametrize("pairs, diag", [([(1, 1)], [0]), ([(0, 0)], [1]), ([], [0, 0]), ([(1, 1)], [])])
def test_general_matches_oracle(gf2, pairs, diag):
    table = enumerate_group(from_signature(gf2, pairs, diag))
    phis = involutions_of(table)
    for a in phis:
        for b in phis:
            verdict, g = find_conjugator(a, b)
            assert verdict == Verdict.of(oracle_conjugate(table, a, b))
            if g is not None:
                assert g in table
                assert g.compose(a) == b.compose(g)


def test_general_on_representatives(gf2):
    table = enumerate_group(from_signature(gf2, [(0, 0), (0, 0)]))
    reps = [c[0] for c in involution_classes(table)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            assert conjugate_test_general(a, b) == Verdict.of(i == j)


def test_find_conjugator_identity_witness(gf2):
    phi = hyperbolic_reflection(gf2)
    verdict, g = find_conjugator(phi, phi)
    assert verdict == Verdict.TRUE
    assert g.is_identity


class TestOracle:
    def test_oracle_and_centralizer(self, gf2):
        table = enumerate_group(from_signature(gf2, [(1, 1)]))
        a, b = orthogonal_transvection(table.form, (1, 0)), orthogonal_transvection(table.form, (0, 1))
        assert oracle_conjugate(table, a, b)
        assert centralizer_order(table, a) == 2
        assert centralizer_order(table, identity(table.form)) == 6

    def test_census_one_pair(self, gf2):
        report = census(enumerate_group(from_signature(gf2, [(1, 1)])))
        assert (report.group_order, report.involution_count) == (6, 3)
        assert len(report.classes) == 1
        row = report.classes[0]
        assert (row.size, row.centralizer_order) == (3, 2)
        assert row.descriptor.kind == DIAG
        assert report.class_equation_ok
        assert report.equal_centralizer_pairs == []

    def test_census_hyperbolic_plane(self, gf2):
        report = census(enumerate_group(from_signature(gf2, [(0, 0)])))
        assert report.group_order == 2
        assert [(r.size, r.centralizer_order) for r in report.classes] == [(1, 2)]
        assert report.classes[0].representative == [[0, 1], [1, 0]]

    def test_census_five_dimensional(self, gf2):
        report = census(enumerate_group(from_signature(gf2, [(0, 0), (0, 0)], [1])))
        assert report.group_order == 720
        assert report.involution_count == 75
        assert sorted(r.size for r in report.classes) == [15, 15, 45]
        assert report.class_equation_ok

    def test_equal_centralizers(self, gf2):
        table = enumerate_group(from_signature(gf2, [(0, 0), (0, 0)]))
        classes = involution_classes(table)
        pairs = equal_centralizer_classes(table, classes)
        assert len(pairs) == 1
        i, j = pairs[0]
        assert len(classes[i]) == len(classes[j]) == 6
        assert {classify(classes[i][0]).kind, classify(classes[j][0]).kind} == {DIAG, NULL}


class TestFamilies:
    def test_families_of_a_plane(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        assert orthogonal_families(q, 1) == [((1, 0),), ((1, 1),), ((0, 1),)]
        assert orthogonal_families(q, 2) == []

    def test_equal_products(self, gf2, gf4):
        assert equal_products_violations(from_signature(gf2, [(1, 1), (0, 0)])) == []
        assert equal_products_violations(from_signature(gf2, [(1, 1)], [0])) == []
        assert equal_products_violations(from_signature(gf4, [(1, 1)], [1])) == []

    def test_infinite_field(self, f2t):
        with pytest.raises(Undecidable):
            orthogonal_families(from_signature(f2t, [(f2t.one, f2t.one)]), 1)
