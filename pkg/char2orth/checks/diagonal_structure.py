"""
Fixed-point groups of diagonal involutions on nonsingular spaces, through P X C
"""

from typing import List

from ..fixedpoints import diagonal_fixed_structure
from ..models import CheckName, InvolutionKind
from ..quadspace import is_nonsingular
from .base_check import BaseCheck, CheckContext


class DiagonalStructureCheck(BaseCheck):
    name = CheckName.DIAGONAL_STRUCTURE
    sample_form = "[1,1]_|_[1,1]"
    normality_sample = 6

    def applies(self, context: CheckContext) -> bool:
        return is_nonsingular(context.form) and context.descriptor.kind is InvolutionKind.DIAGONAL

    def violations(self, context: CheckContext) -> List[str]:
        structure = diagonal_fixed_structure(context.form, context.involution)
        fixed = context.centralizer
        ret = []
        predicted = structure.predicted_order
        if fixed.order != predicted:
            ret.append(f"centralizer order {fixed.order} != predicted {predicted} ({structure.factors})")
        for i, g in enumerate(fixed):
            bad = structure.pxc_factorize(g).violations() + structure.fix_relation_violations(g)
            if bad:
                ret.append(f"fixed element {i}: {bad[0]}")
        ret += structure.beta_group_violations()
        ret += structure.fixes_subspace_violations(context.table)
        ret += structure.normality_violations(context.sample(list(fixed), self.normality_sample))
        context.note(f"l={structure.l}, isotropic part {structure.dim_is}, dim X {structure.p}")
        return ret
