"""
The type-specific conjugacy predicates agree with brute-force conjugacy classes
"""

from typing import List

from ..involutions import are_conjugate
from ..models import CheckName, Verdict
from .base_check import BaseCheck, CheckContext


class ConjugacyCheck(BaseCheck):
    name = CheckName.CONJUGACY
    per_involution = False
    sample_form = "[0,0]_|_[0,0]"
    members_per_class = 3

    def applies(self, context: CheckContext) -> bool:
        return context.form.dim > 0

    def violations(self, context: CheckContext) -> List[str]:
        classes = context.classes
        reps = [c[0] for c in classes]
        ret = []
        tested = undecided = 0
        for i, members in enumerate(classes):
            for phi in context.sample(members, self.members_per_class):
                for j, rep in enumerate(reps):
                    verdict = are_conjugate(phi, rep)
                    tested += 1
                    if verdict is Verdict.UNKNOWN:
                        undecided += 1
                    elif (verdict is Verdict.TRUE) != (i == j):
                        ret.append(f"predicate says {verdict.value} for a member of class {i} "
                                   f"against the representative of class {j}")
        context.note(f"{len(classes)} classes, {tested} pairs, {undecided} undecided")
        return ret
