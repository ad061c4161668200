import json
import logging

import pytest
from typer.testing import CliRunner

from char2orth.cli import app
from char2orth.config import reset_settings

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    reset_settings()


def invoke(*args):
    return runner.invoke(app, ["--log-level", "ERROR", *args])


def invoke_json(*args):
    result = invoke(*args, "--out", "json")
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestNormalize:
    def test_hyperbolic_sum(self):
        report = invoke_json("normalize", "--field", "gf2", "--form", "[1,1]_|_[1,1]")
        assert report["schema"] == "char2orth/witt/v1"
        assert (report["witt_index"], report["defect"]) == (2, 0)
        assert report["arf"] == "0"

    def test_defective_line(self):
        report = invoke_json("normalize", "--field", "gf2", "--form", "<0>")
        assert (report["witt_index"], report["defect"]) == (0, 1)

    def test_rational_function_field(self):
        report = invoke_json("normalize", "--field", "f2t", "--form", "<1,t,t^2>")
        assert (report["witt_index"], report["defect"]) == (0, 1)
        assert sorted(report["aniso_diag"]) == ["1", "t"]

    def test_table_output(self):
        result = invoke("normalize", "--form", "[0,0]")
        assert result.exit_code == 0
        assert "normal form" in result.stdout

    def test_parse_error(self):
        result = invoke("normalize", "--form", "[1,")
        assert result.exit_code == 2

    def test_unknown_field(self):
        assert invoke("normalize", "--field", "gf3", "--form", "[1,1]").exit_code == 2


class TestClassify:
    def test_reflection(self):
        report = invoke_json("classify", "--form", "[1,1]", "--phi", "tau(x1)")
        assert report["kind"] == "diagonal"
        assert (report["residue"], report["length"]) == (1, 1)

    def test_null(self):
        report = invoke_json("classify", "--form", "[0,0]_|_[0,0]", "--phi", "null(1,2)")
        assert report["kind"] == "null"
        assert report["length"] == 1

    def test_radical_swap(self):
        report = invoke_json("classify", "--form", "<0,0>", "--phi", "radswap(1,2)")
        assert report["kind"] == "radical"

    def test_matrix_input(self):
        report = invoke_json("classify", "--form", "<0,0>", "--phi", "0,1;1,0")
        assert report["kind"] == "radical"

    def test_not_an_involution(self):
        result = invoke("classify", "--form", "[1,1]", "--phi", "tau(x1)*tau(y1)")
        assert result.exit_code == 2

    def test_not_an_isometry(self):
        assert invoke("classify", "--form", "[1,1]", "--phi", "1,1;0,0").exit_code == 2


class TestConjugate:
    def test_reflections_in_s3(self):
        report = invoke_json("conjugate", "--form", "[1,1]", "--phi", "tau(x1)", "--psi", "tau(y1)")
        assert report["verdict"] == "true"
        assert report["witness"] is not None

    def test_different_kinds(self):
        report = invoke_json("conjugate", "--form", "[0,0]_|_[0,0]", "--phi", "null(1,2)", "--psi", "tau(x1+y1)")
        assert report["verdict"] == "false"
        assert report["witness"] is None


class TestFixgroup:
    def test_reflection(self):
        report = invoke_json("fixgroup", "--form", "[1,1]", "--phi", "tau(x1)")
        assert report["predicted_order"] == 2
        assert report["centralizer_order"] == 2
        assert report["matches"] is True

    def test_radical_swap(self):
        report = invoke_json("fixgroup", "--form", "<0,0>", "--phi", "radswap(1,2)")
        assert report["predicted_order"] == report["centralizer_order"] == 2

    def test_without_oracle(self):
        report = invoke_json("fixgroup", "--form", "[1,1]", "--phi", "tau(x1)", "--no-oracle")
        assert report["centralizer_order"] is None
        assert report["matches"] is None

    def test_null_involution_has_no_structure(self):
        assert invoke("fixgroup", "--form", "[0,0]_|_[0,0]", "--phi", "null(1,2)").exit_code == 2


class TestCensus:
    @pytest.mark.parametrize("form,order,involutions,classes", [
        ("[1,1]", 6, 3, 1),
        ("[0,0]", 2, 1, 1),
    ])
    def test_small_groups(self, form, order, involutions, classes):
        report = invoke_json("census", "--form", form)
        assert report["group_order"] == order
        assert report["involution_count"] == involutions
        assert len(report["classes"]) == classes
        assert report["class_equation_ok"]

    def test_two_hyperbolic_planes(self):
        report = invoke_json("census", "--form", "[0,0]_|_[0,0]")
        assert report["group_order"] == 72
        assert sum(c["size"] for c in report["classes"]) == report["involution_count"]

    def test_table_output(self):
        result = invoke("census", "--form", "[1,1]")
        assert result.exit_code == 0
        assert "centralizer" in result.stdout

    def test_budget_exceeded(self):
        result = invoke("census", "--field", "gf4", "--form", "[0,0]_|_[0,0]", "--budget", "4")
        assert result.exit_code == 3


class TestVerify:
    @pytest.mark.parametrize("form", ["[1,1]", "<0,0>", "[1,1]_|_<0>"])
    def test_small_cases_pass(self, form):
        report = invoke_json("verify", "--form", form)
        assert report["failed"] == 0
        assert report["passed"] > 0

    def test_empty_form_passes_vacuously(self):
        report = invoke_json("verify", "--form", "")
        assert report["involutions"] == 0
        assert report["failed"] == 0

    def test_tampered_group_fails(self):
        result = invoke("verify", "--form", "[1,1]", "--tamper")
        assert result.exit_code == 1
        assert "not an isometry" in result.stdout
        assert "checks failed" in result.output

    def test_tamper_needs_a_nonempty_form(self):
        assert invoke("verify", "--form", "", "--tamper").exit_code == 2
