import random

import pytest

from char2orth import linalg
from char2orth.checks import (
    AGroupLawsCheck,
    CheckContext,
    ConjugacyCheck,
    DiagonalStructureCheck,
    GroupClosureCheck,
    OrbitConstancyCheck,
    RadicalStructureCheck,
    TripleLawsCheck,
    VerificationJob,
    VerificationManager,
    WittInvarianceCheck,
    tampered_matrix,
)
from char2orth.errors import BudgetExceeded, FormError
from char2orth.models import CheckName, CheckStatus
from char2orth.orthogroup import (
    GroupTable,
    Isometry,
    enumerate_group,
    involutions_of,
    is_isometry,
    orthogonal_transvection,
    product_of_transvections,
)
from char2orth.quadspace import from_signature


def statuses(check, table):
    return [check.run(c).status for c in check.contexts(table)]


class TestGroupClosure:
    def test_passes_on_s3(self, gf2):
        table = enumerate_group(from_signature(gf2, [(1, 1)]))
        outcome = GroupClosureCheck().run(CheckContext(table))
        assert outcome.status is CheckStatus.PASS
        assert outcome.subject == "[1,1]"

    def test_locates_a_tampered_element(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        table = enumerate_group(q)
        tampered = GroupTable(q, table.elements + (tampered_matrix(q),))
        outcome = GroupClosureCheck().run(CheckContext(tampered))
        assert outcome.status is CheckStatus.FAIL
        assert "element 6 is not an isometry" in outcome.residual

    def test_missing_elements(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        table = enumerate_group(q)
        partial = GroupTable(q, table.elements[:4])
        assert GroupClosureCheck().run(CheckContext(partial)).status is CheckStatus.FAIL

    def test_empty_form_is_skipped(self, gf2):
        table = enumerate_group(from_signature(gf2))
        assert GroupClosureCheck().run(CheckContext(table)).status is CheckStatus.SKIP


class TestTamperedMatrix:
    def test_shear_when_one_breaks_q(self, gf2):
        q = from_signature(gf2, [(0, 0)])
        M = tampered_matrix(q)
        assert linalg.is_invertible(gf2, M)
        assert not is_isometry(q, M)

    def test_zero_matrix_on_totally_singular_spaces(self, gf2):
        q = from_signature(gf2, diag=[0, 0])
        assert tampered_matrix(q) == linalg.zero_matrix(gf2, 2, 2)

    def test_empty_form(self, gf2):
        with pytest.raises(FormError):
            tampered_matrix(from_signature(gf2))


class TestPerInvolutionChecks:
    def test_orbit_constancy(self, gf2):
        table = enumerate_group(from_signature(gf2, [(0, 0), (1, 1)]))
        assert set(statuses(OrbitConstancyCheck(), table)) == {CheckStatus.PASS}

    def test_triple_laws_apply_only_with_a_proper_radical(self, gf2):
        degenerate = enumerate_group(from_signature(gf2, [(1, 1)], [0]))
        assert CheckStatus.FAIL not in statuses(TripleLawsCheck(), degenerate)
        assert CheckStatus.PASS in statuses(TripleLawsCheck(), degenerate)
        nonsingular = enumerate_group(from_signature(gf2, [(1, 1)]))
        assert set(statuses(TripleLawsCheck(), nonsingular)) == {CheckStatus.SKIP}

    def test_radical_structure(self, gf2, gf4):
        for q in (from_signature(gf2, diag=[0, 0, 0]), from_signature(gf4, diag=[gf4.zero, gf4.one])):
            assert set(statuses(RadicalStructureCheck(), enumerate_group(q))) == {CheckStatus.PASS}

    def test_diagonal_structure_and_a_group(self, gf2):
        q = from_signature(gf2, [(1, 1), (1, 1)])
        table = enumerate_group(q)
        tau = product_of_transvections(q, [(1, 0, 0, 0), (0, 0, 1, 0)])
        context = CheckContext(table, tau, random.Random(3))
        assert DiagonalStructureCheck().run(context).status is CheckStatus.PASS
        outcome = AGroupLawsCheck().run(context)
        assert outcome.status is CheckStatus.PASS
        assert outcome.detail.startswith("|A| = ")

    def test_diagonal_checks_skip_other_kinds(self, gf2):
        q = from_signature(gf2, diag=[0, 0])
        table = enumerate_group(q)
        context = CheckContext(table, Isometry(q, ((0, 1), (1, 0))))
        assert DiagonalStructureCheck().run(context).status is CheckStatus.SKIP
        assert AGroupLawsCheck().run(context).status is CheckStatus.SKIP

    def test_budget_is_a_skip(self, gf2, mocker):
        q = from_signature(gf2, [(1, 1)])
        table = enumerate_group(q)
        mocker.patch("char2orth.checks.diagonal_structure.diagonal_fixed_structure",
                     side_effect=BudgetExceeded("too many candidates"))
        outcome = DiagonalStructureCheck().run(CheckContext(table, orthogonal_transvection(q, (1, 0))))
        assert outcome.status is CheckStatus.SKIP
        assert "too many candidates" in outcome.detail


class TestGroupLevelChecks:
    def test_conjugacy(self, gf2):
        table = enumerate_group(from_signature(gf2, [(0, 0), (0, 0)]))
        outcome = ConjugacyCheck().run(CheckContext(table))
        assert outcome.status is CheckStatus.PASS
        assert outcome.detail.endswith("undecided")

    def test_witt_invariance(self, gf4):
        table = enumerate_group(from_signature(gf4, [(1, 0b10)]))
        check = WittInvarianceCheck()
        check.trials = 20
        outcome = check.run(CheckContext(table, rng=random.Random(5)))
        assert outcome.status is CheckStatus.PASS
        assert "m=0, d=0" in outcome.detail


class TestVerificationManager:
    def test_registry(self):
        manager = VerificationManager()
        assert set(manager.checks) == set(CheckName)

    @pytest.mark.parametrize("pairs,diag", [([(1, 1)], []), ([(0, 0)], [0]), ([], [0, 0, 1])])
    def test_sweeps_pass(self, gf2, pairs, diag):
        result = VerificationManager().run(VerificationJob(from_signature(gf2, pairs, diag)))
        report = result.report
        assert report.ok
        assert report.passed > 0
        assert report.passed + report.failed + report.skipped == len(report.outcomes)

    def test_involution_count(self, gf2):
        q = from_signature(gf2, [(1, 1)])
        report = VerificationManager().run(VerificationJob(q, checks=[CheckName.ORBIT_CONSTANCY])).report
        assert report.group_order == 6
        assert report.involutions == len(involutions_of(enumerate_group(q))) == 3
        assert len(report.outcomes) == 3

    def test_empty_form_passes_vacuously(self, gf2):
        report = VerificationManager().run(VerificationJob(from_signature(gf2))).report
        assert report.ok
        assert report.involutions == 0
        assert report.passed == 0

    def test_negative_control(self, gf2):
        q = from_signature(gf2, [(0, 0)])
        report = VerificationManager().run(VerificationJob(q, tamper=tampered_matrix(q))).report
        assert not report.ok
        closure = [o for o in report.outcomes if o.check is CheckName.GROUP_CLOSURE]
        assert closure[0].status is CheckStatus.FAIL
        assert "q changes on" in closure[0].residual

    def test_budget_propagates(self, gf4):
        job = VerificationJob(from_signature(gf4, [(0, 0), (0, 0)]), budget_bits=4)
        with pytest.raises(BudgetExceeded):
            VerificationManager().run(job)

    def test_crashing_check_is_a_failure(self, gf2, mocker):
        manager = VerificationManager()
        mocker.patch.object(manager.checks[CheckName.ORBIT_CONSTANCY], "run", side_effect=RuntimeError("boom"))
        job = VerificationJob(from_signature(gf2, [(1, 1)]), checks=[CheckName.ORBIT_CONSTANCY])
        report = manager.run(job).report
        assert report.failed == 3
        assert "boom" in report.outcomes[0].residual

    def test_stats(self, gf2):
        manager = VerificationManager()
        assert manager.get_verification_stats()["total_jobs"] == 0
        manager.run(VerificationJob(from_signature(gf2, [(1, 1)]), checks=[CheckName.GROUP_CLOSURE]))
        stats = manager.get_verification_stats()
        assert stats["total_jobs"] == 1
        assert stats["failures"] == {}

    def test_self_tests(self):
        results = VerificationManager().test_all_checks()
        assert all(results.values()), results
