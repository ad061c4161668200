"""
Verification Manager for char2orth
Coordinates all structure checks over the involutions of an enumerated group
"""

import logging
import random
import time
from collections import defaultdict
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Dict, List, Optional

from .. import linalg
from ..errors import FormError
from ..linalg import Matrix
from ..models import CheckName, CheckStatus, VerifyReport
from ..orthogroup import GroupTable, enumerate_group, involutions_of, is_isometry
from ..quadspace import QuadForm
from .agroup_laws import AGroupLawsCheck
from .base_check import BaseCheck, CheckContext
from .conjugacy import ConjugacyCheck
from .diagonal_structure import DiagonalStructureCheck
from .group_closure import GroupClosureCheck
from .orbit_constancy import OrbitConstancyCheck
from .radical_structure import RadicalStructureCheck
from .triple_laws import TripleLawsCheck
from .witt_invariance import WittInvarianceCheck

logger = logging.getLogger(__name__)


def tampered_matrix(q: QuadForm) -> Matrix:
    """A matrix that is not an isometry of q: an elementary shear when one breaks q,
    otherwise the zero matrix."""
    f = q.field
    n = q.dim
    if n == 0:
        raise FormError("the empty form has no non-isometries")
    ident = linalg.identity(f, n)
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            M = tuple(linalg.vadd(f, ident[c], linalg.unit(f, n, i)) if c == j else ident[c] for c in range(n))
            if not is_isometry(q, M):
                return M
    return linalg.zero_matrix(f, n, n)


@dataclass
class VerificationJob:
    """Represents a verification job"""
    form: QuadForm
    checks: List[CheckName] = None
    # negative control: a matrix appended to the enumerated group
    tamper: Optional[Matrix] = None
    seed: int = 0
    budget_bits: Optional[int] = None
    jobs: Optional[int] = None
    created_at: datetime = None

    def __post_init__(self):
        if self.created_at is None:
            self.created_at = datetime.now(timezone.utc)
        if self.checks is None:
            self.checks = list(CheckName)


@dataclass
class VerificationResult:
    """Results of a verification run"""
    job: VerificationJob
    report: VerifyReport
    duration: float
    completed_at: datetime


class VerificationManager:
    """Manages all structure checks"""

    def __init__(self):
        self.checks: Dict[CheckName, BaseCheck] = {}
        self.job_history: List[VerificationResult] = []
        self.initialize_checks()

    def initialize_checks(self):
        """Register every available check"""
        check_classes = [
            # group level
            GroupClosureCheck,
            WittInvarianceCheck,
            ConjugacyCheck,

            # per involution
            OrbitConstancyCheck,
            TripleLawsCheck,
            RadicalStructureCheck,
            DiagonalStructureCheck,
            AGroupLawsCheck,
        ]
        for check_class in check_classes:
            self.register(check_class())

    def register(self, check: BaseCheck):
        self.checks[check.name] = check
        logger.debug(f"Registered {check.name.value} check")

    def _table(self, job: VerificationJob) -> GroupTable:
        table = enumerate_group(job.form, budget_bits=job.budget_bits, jobs=job.jobs)
        if job.tamper is None:
            return table
        logger.warning("Test mode: appending a tampered matrix to the group")
        return GroupTable(job.form, table.elements + (tuple(tuple(c) for c in job.tamper),))

    def run(self, job: VerificationJob) -> VerificationResult:
        """Execute a verification job; BudgetExceeded from the enumeration propagates"""
        start = time.perf_counter()
        q = job.form
        logger.info(f"Starting verification of {q.format() or '(empty form)'} over {q.field.name}")
        table = self._table(job)
        involutions = [phi for phi in involutions_of(table) if is_isometry(q, phi.matrix)]
        selected = [self.checks[name] for name in job.checks if name in self.checks]
        missing = [name.value for name in job.checks if name not in self.checks]
        if missing:
            logger.warning(f"Checks not available: {', '.join(missing)}")

        report = VerifyReport(field=q.field.name, form=q.format(), group_order=table.order,
                              involutions=len(involutions))
        group_context = CheckContext(table, rng=random.Random(job.seed))
        for check in selected:
            if not check.per_involution:
                report.outcomes.append(self._run_check(check, group_context))
        for i, phi in enumerate(involutions):
            context = CheckContext(table, phi, random.Random(job.seed + i + 1))
            for check in selected:
                if check.per_involution:
                    report.outcomes.append(self._run_check(check, context))

        for outcome in report.outcomes:
            if outcome.status is CheckStatus.PASS:
                report.passed += 1
            elif outcome.status is CheckStatus.FAIL:
                report.failed += 1
            else:
                report.skipped += 1

        duration = time.perf_counter() - start
        result = VerificationResult(job=job, report=report, duration=duration,
                                    completed_at=datetime.now(timezone.utc))
        self.job_history.append(result)
        logger.info(f"Verification completed: {report.passed} passed, {report.failed} failed, "
                    f"{report.skipped} skipped over {len(involutions)} involutions, took {duration:.2f}s")
        return result

    def _run_check(self, check: BaseCheck, context: CheckContext):
        try:
            return check.run(context)
        except Exception as e:
            logger.error(f"{check.name.value} crashed on {context.subject}: {e}")
            return check.run_failed(context, e)

    def test_all_checks(self) -> Dict[CheckName, bool]:
        """Self-test every check on its sample case"""
        results = {}
        for name, check in self.checks.items():
            results[name] = check.self_test()
            logger.info(f"{name.value} check test: {'PASS' if results[name] else 'FAIL'}")
        return results

    def get_verification_stats(self) -> Dict:
        """Statistics about verification runs"""
        if not self.job_history:
            return {"total_jobs": 0, "total_outcomes": 0, "avg_duration": 0}

        failures = defaultdict(int)
        for result in self.job_history:
            for outcome in result.report.outcomes:
                if outcome.status is CheckStatus.FAIL:
                    failures[outcome.check.value] += 1

        return {
            "total_jobs": len(self.job_history),
            "total_outcomes": sum(len(r.report.outcomes) for r in self.job_history),
            "avg_duration": round(sum(r.duration for r in self.job_history) / len(self.job_history), 2),
            "failures": dict(failures),
            "last_job": self.job_history[-1].completed_at.isoformat(),
        }
