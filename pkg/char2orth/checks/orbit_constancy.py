"""
The classification of an involution is constant on its conjugacy class
"""

from typing import List

from ..involutions import TRANSVECTION_KINDS, InvolutionDescriptor, classify, inducing_vectors, norm_forms_equivalent
from ..models import CheckName
from ..orthogroup import product_of_transvections
from .base_check import BaseCheck, CheckContext


def _invariants(d: InvolutionDescriptor) -> tuple:
    return d.kind, d.residue, d.length, d.dim_u


class OrbitConstancyCheck(BaseCheck):
    name = CheckName.ORBIT_CONSTANCY
    sample_form = "[0,0]_|_[0,0]"
    conjugates = 6

    def violations(self, context: CheckContext) -> List[str]:
        d = context.descriptor
        phi = context.involution
        q = context.form
        f = q.field
        ret = []
        if d.kind in TRANSVECTION_KINDS and product_of_transvections(q, inducing_vectors(phi)).matrix != phi.matrix:
            ret.append("inducing vectors do not multiply back to the involution")
        expected = _invariants(d)
        table = context.table
        for i in context.sample(range(table.order), self.conjugates):
            other = classify(phi.conjugate_by(table.isometry(i)))
            if _invariants(other) != expected:
                ret.append(f"conjugate by element {i} is {other.kind.value} with residue {other.residue}, "
                           f"length {other.length}")
            elif not norm_forms_equivalent(f, d.norm_signature, other.norm_signature):
                ret.append(f"conjugate by element {i} has an inequivalent norm signature")
        return ret
