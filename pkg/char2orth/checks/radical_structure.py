"""
Fixed-point groups of radical involutions on totally singular spaces
"""

from typing import List

from ..fixedpoints import radical_fixed_structure
from ..models import CheckName, InvolutionKind
from ..quadspace import is_totally_singular
from .base_check import BaseCheck, CheckContext


class RadicalStructureCheck(BaseCheck):
    name = CheckName.RADICAL_STRUCTURE
    sample_form = "<0,0>"

    def applies(self, context: CheckContext) -> bool:
        return is_totally_singular(context.form) and context.descriptor.kind is InvolutionKind.RADICAL

    def violations(self, context: CheckContext) -> List[str]:
        structure = radical_fixed_structure(context.form, context.involution)
        ret = list(structure.violations())
        fixed = context.centralizer
        if fixed.order != structure.predicted_order:
            ret.append(f"centralizer order {fixed.order} != predicted {structure.predicted_order} "
                       f"({structure.factors})")
        for gamma in fixed:
            m, rest = structure.decompose(gamma)
            if m.compose(rest).matrix != gamma.matrix:
                ret.append("stabilizer and matrix parts do not multiply back")
                break
        context.note(f"n={structure.n}, order {fixed.order}")
        return ret
