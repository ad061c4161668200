import pytest

from char2orth import linalg
from char2orth.errors import NotAnIsometry, ParseError
from char2orth.field import GF2, GF4, GF16, RATFUNC
from char2orth.orthogroup import basic_null_on_pairs, orthogonal_transvection
from char2orth.parsing import (
    format_matrix,
    format_vector,
    parse_element,
    parse_field,
    parse_form,
    parse_isometry,
    parse_isometry_expr,
    parse_matrix,
    parse_vector,
    tokenize,
)
from char2orth.quadspace import from_signature


class TestFields:
    def test_named_fields(self):
        assert parse_field("gf2") == GF2
        assert parse_field("gf4") == GF4
        assert parse_field(" GF16 ") == GF16
        assert parse_field("f2t") is RATFUNC

    def test_custom_modulus(self):
        f = parse_field("gf16:0b11001")
        assert f.modulus == 0b11001
        assert f.name == "gf16:25"
        assert parse_field(f.name) == f

    @pytest.mark.parametrize("text", ["gf6", "gf", "q7", "gf16:0b10101", "gf4:5"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_field(text)


class TestElements:
    def test_binary_ext(self):
        assert parse_element(GF4, "t^2") == 0b11
        assert parse_element(GF4, "t*t+t") == 1
        assert parse_element(GF4, "0b11") == 3
        assert parse_element(GF4, "5") == 2
        assert parse_element(GF2, "t") == 1

    def test_ratfunc(self):
        assert parse_element(RATFUNC, "t/(t+1)") == RATFUNC.make(0b10, 0b11)
        assert parse_element(RATFUNC, "(t^2+1)/(t+1)") == (0b11, 1)
        assert parse_element(RATFUNC, "1/t/t") == (1, 0b100)

    def test_format_round_trip(self, rng):
        for f in (GF4, GF16, RATFUNC):
            for _ in range(50):
                a = f.random_element(rng, max_degree=5)
                assert parse_element(f, f.format(a)) == a

    def test_division_by_zero_is_located(self):
        with pytest.raises(ParseError) as err:
            parse_element(RATFUNC, "t/(t+t)")
        assert err.value.column == 2

    def test_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_element(GF4, "t+")
        assert (err.value.line, err.value.column) == (1, 3)
        with pytest.raises(ParseError):
            parse_element(GF4, "t t")
        with pytest.raises(ParseError):
            parse_element(GF4, "t$")


class TestForms:
    def test_canonical_round_trip(self):
        for f, text in [
            (GF2, "[1,1]_|_[0,0]"),
            (GF4, "[t,t+1]_|_<1,t>"),
            (GF2, "<0>"),
            (RATFUNC, "[t/(t+1),1]_|_<t^2+1>"),
            (GF2, "<>"),
        ]:
            assert parse_form(f, text).format() == text

    def test_empty(self):
        assert parse_form(GF2, "").dim == 0
        assert parse_form(GF2, "<>").dim == 0

    def test_separators(self):
        assert parse_form(GF2, "[1,1] ⊥ <1>") == parse_form(GF2, "[1,1]_|_<1>")
        assert parse_form(GF2, "<1>_|_<0>") == from_signature(GF2, diag=[1, 0])

    def test_pairs_before_diagonal(self):
        with pytest.raises(ParseError):
            parse_form(GF2, "<1>_|_[0,0]")

    def test_line_and_column(self):
        with pytest.raises(ParseError) as err:
            parse_form(GF2, "[1,1]_|_[0,0")
        assert (err.value.line, err.value.column) == (1, 13)
        with pytest.raises(ParseError) as err:
            parse_form(GF2, "[1,1]\n_|_ [0,x]")
        assert (err.value.line, err.value.column) == (2, 8)
        assert "line 2" in str(err.value)


class TestVectors:
    q = from_signature(GF4, [(1, 1)], [1])

    def test_names(self):
        assert parse_vector(self.q, "x1+y1") == (1, 1, 0)
        assert parse_vector(self.q, "t*x1+g1") == (2, 0, 1)
        assert parse_vector(self.q, "(t+1)*y_1") == (0, 3, 0)
        assert parse_vector(self.q, "t*t*e3") == (0, 0, 3)

    def test_tuple(self):
        assert parse_vector(self.q, "(1,t,0)") == (1, 2, 0)
        assert format_vector(GF4, (1, 2, 0)) == "(1,t,0)"

    @pytest.mark.parametrize("text", ["x2", "g2", "e4", "(1,0)", "x1+", "t+x1"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_vector(self.q, text)


class TestMatrices:
    def test_row_major(self):
        assert parse_matrix(GF2, "1,0;1,1") == ((1, 1), (0, 1))

    def test_round_trip(self, rng):
        for _ in range(10):
            M = linalg.random_invertible(GF4, 3, rng)
            assert parse_matrix(GF4, format_matrix(GF4, M)) == M
        M = ((RATFUNC.make(2, 3), RATFUNC.one), (RATFUNC.zero, RATFUNC.make(1, 2)))
        assert format_matrix(RATFUNC, M) == "t/(t+1),0;1,1/t"
        assert parse_matrix(RATFUNC, format_matrix(RATFUNC, M)) == M

    @pytest.mark.parametrize("text", ["1,0;1", "1,0", "1;0"])
    def test_rejects_non_square(self, text):
        with pytest.raises(ParseError):
            parse_matrix(GF2, text)

    def test_expected_size(self):
        with pytest.raises(ParseError):
            parse_matrix(GF2, "1", n=2)


class TestExpressions:
    def test_tau(self):
        q = from_signature(GF2, [(1, 1)])
        assert parse_isometry_expr(q, "tau(x1)").matrix == ((1, 0), (1, 1))
        assert parse_isometry_expr(q, "tau(x1)*tau(x1)").is_identity
        assert parse_isometry_expr(q, "id").is_identity
        assert parse_isometry_expr(q, "transvection(x1, 0)").is_identity

    def test_composition_order(self):
        q = from_signature(GF2, [(1, 1)])
        a = orthogonal_transvection(q, (1, 0))
        b = orthogonal_transvection(q, (0, 1))
        assert parse_isometry_expr(q, "tau(x1)*tau(y1)").matrix == a.compose(b).matrix
        assert a.compose(b).matrix != b.compose(a).matrix

    def test_null_and_radswap(self):
        q = from_signature(GF2, [(0, 0), (0, 0)])
        assert parse_isometry_expr(q, "null(1,2)") == basic_null_on_pairs(q, 0, 1)
        r = from_signature(GF2, diag=[0, 0])
        assert parse_isometry_expr(r, "radswap(1,2)").matrix == ((0, 1), (1, 0))

    @pytest.mark.parametrize("text", ["tau(x1)", "foo(1)", "null(1,3)", "radswap(1,2)", "tau(x1", "id id"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_isometry_expr(from_signature(GF2, [(0, 0), (0, 0)]), text)

    def test_expression_or_matrix(self):
        q = from_signature(GF2, [(1, 1)])
        assert parse_isometry(q, "tau(x1)") == orthogonal_transvection(q, (1, 0))
        assert parse_isometry(q, "1,0;1,1").matrix == ((1, 1), (0, 1))

    @pytest.mark.parametrize("field,text", [(GF2, "1,1;0,0"), (GF4, "transvection(x1, t)")])
    def test_rejects_non_isometries(self, field, text):
        with pytest.raises(NotAnIsometry):
            parse_isometry(from_signature(field, [(1, 1)]), text)


def test_tokenize_positions():
    tokens = tokenize("[t, 0b1]_|_<1>")
    assert [t.kind for t in tokens][:6] == ["op", "name", "op", "num", "op", "sep"]
    assert tokens[3].pos == 4
    assert tokens[-1].kind == "end"
