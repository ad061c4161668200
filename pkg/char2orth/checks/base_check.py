"""
Base Check Class for char2orth
Provides the common run/self-test machinery for every verification check
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional, Sequence

from ..errors import BudgetExceeded, Char2OrthError, Undecidable
from ..fixedpoints import FixedPointGroup, centralizer
from ..involutions import InvolutionDescriptor, classify, involution_classes
from ..models import CheckName, CheckOutcome, CheckStatus
from ..orthogroup import GroupTable, Isometry, enumerate_group, involutions_of
from ..parsing import format_matrix, parse_field, parse_form
from ..quadspace import QuadForm

logger = logging.getLogger(__name__)


@dataclass
class CheckContext:
    """What a check sees: the enumerated group and, for per-involution checks, one involution."""

    table: GroupTable
    involution: Optional[Isometry] = None
    rng: random.Random = dc_field(default_factory=lambda: random.Random(0))
    notes: List[str] = dc_field(default_factory=list)

    @property
    def form(self) -> QuadForm:
        return self.table.form

    @property
    def subject(self) -> str:
        if self.involution is None:
            return self.form.format() or "(empty form)"
        return format_matrix(self.form.field, self.involution.matrix)

    @cached_property
    def descriptor(self) -> InvolutionDescriptor:
        return classify(self.involution)

    @cached_property
    def centralizer(self) -> FixedPointGroup:
        return centralizer(self.table, self.involution)

    @cached_property
    def classes(self) -> List[List[Isometry]]:
        return involution_classes(self.table)

    def sample(self, items: Sequence, k: int) -> list:
        """All of items when there are at most k, else k of them in stable order."""
        items = list(items)
        if len(items) <= k:
            return items
        picked = sorted(self.rng.sample(range(len(items)), k))
        return [items[i] for i in picked]

    def note(self, message: str) -> None:
        self.notes.append(message)


class BaseCheck(ABC):
    """Base class for all verification checks"""

    name: CheckName
    per_involution = True
    # small case the self-test runs on
    sample_field = "gf2"
    sample_form = "[1,1]"

    def applies(self, context: CheckContext) -> bool:
        return True

    @abstractmethod
    def violations(self, context: CheckContext) -> List[str]:
        """Human-readable residuals; empty when the check holds"""
        pass

    def run(self, context: CheckContext) -> CheckOutcome:
        context.notes = []
        subject = context.subject
        try:
            if not self.applies(context):
                return CheckOutcome(check=self.name, status=CheckStatus.SKIP, subject=subject, detail="not applicable")
            bad = self.violations(context)
        except (BudgetExceeded, Undecidable) as e:
            return CheckOutcome(check=self.name, status=CheckStatus.SKIP, subject=subject, detail=str(e))
        except Char2OrthError as e:
            bad = [f"{type(e).__name__}: {e}"]
        detail = "; ".join(context.notes)
        if bad:
            logger.error(f"{self.name.value} failed on {subject}: {bad[0]}")
            return CheckOutcome(check=self.name, status=CheckStatus.FAIL, subject=subject,
                                residual="; ".join(bad), detail=detail)
        return CheckOutcome(check=self.name, status=CheckStatus.PASS, subject=subject, detail=detail)

    def run_failed(self, context: CheckContext, error: Exception) -> CheckOutcome:
        return CheckOutcome(check=self.name, status=CheckStatus.FAIL, subject=context.subject,
                            residual=f"{type(error).__name__}: {error}")

    def contexts(self, table: GroupTable, seed: int = 0) -> List[CheckContext]:
        if not self.per_involution:
            return [CheckContext(table, rng=random.Random(seed))]
        return [CheckContext(table, phi, random.Random(seed + i + 1)) for i, phi in enumerate(involutions_of(table))]

    def self_test(self) -> bool:
        """Test if the check passes on its sample case"""
        try:
            q = parse_form(parse_field(self.sample_field), self.sample_form)
            outcomes = [self.run(c) for c in self.contexts(enumerate_group(q))]
            if any(o.status is CheckStatus.FAIL for o in outcomes):
                return False
            return any(o.status is CheckStatus.PASS for o in outcomes)
        except Exception as e:
            logger.error(f"Check self-test failed: {e}")
            return False
