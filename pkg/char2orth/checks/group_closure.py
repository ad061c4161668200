"""
Closure of an enumerated orthogonal group and agreement with the classical order
"""

from typing import List

from .. import linalg
from ..models import CheckName
from ..orthogroup import is_isometry, isometry_witness, order_formula
from ..parsing import format_vector
from ..quadspace import is_nonsingular
from .base_check import BaseCheck, CheckContext


class GroupClosureCheck(BaseCheck):
    name = CheckName.GROUP_CLOSURE
    per_involution = False
    sample_form = "[1,1]"
    max_pairs = 2000

    def applies(self, context: CheckContext) -> bool:
        return context.form.dim > 0

    def violations(self, context: CheckContext) -> List[str]:
        table = context.table
        q = table.form
        f = q.field
        ret = []
        for i, M in enumerate(table.elements):
            if is_isometry(q, M):
                continue
            witness = isometry_witness(q, M)
            where = f"q changes on {format_vector(f, witness)}" if witness is not None else "singular matrix"
            ret.append(f"element {i} is not an isometry: {where}")
        if ret:
            return ret
        if linalg.identity(f, q.dim) not in table.index:
            ret.append("identity is missing")
        n = table.order
        pairs = [(i, j) for i in range(n) for j in range(n)] if n * n <= self.max_pairs else [
            (context.rng.randrange(n), context.rng.randrange(n)) for _ in range(self.max_pairs)]
        for i, j in pairs:
            if linalg.matmul(f, table.elements[i], table.elements[j]) not in table.index:
                ret.append(f"product of elements {i} and {j} is missing")
                break
        for i in context.sample(range(n), 200):
            if table.inverses[i] not in table.index:
                ret.append(f"inverse of element {i} is missing")
                break
        if is_nonsingular(q):
            expected = order_formula(q)
            if expected != n:
                ret.append(f"order {n} differs from the classical order {expected}")
        context.note(f"order {n}, {len(pairs)} products")
        return ret
