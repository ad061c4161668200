"""
Block laws of phi = [rho, rho Y; 0, tau] on spaces with a proper nonzero radical
"""

from typing import List

from ..errors import NormalizationError
from ..fixedpoints import element_triple, general_fixed_check
from ..involutions import decompose_triple, normalize_triple, reassemble
from ..models import CheckName
from ..quadspace import radical
from .base_check import BaseCheck, CheckContext


class TripleLawsCheck(BaseCheck):
    name = CheckName.TRIPLE_LAWS
    sample_form = "[1,1]_|_<0>"
    elements = 24

    def applies(self, context: CheckContext) -> bool:
        s = radical(context.form).dim
        return 0 < s < context.form.dim

    def violations(self, context: CheckContext) -> List[str]:
        phi = context.involution
        T = decompose_triple(phi)
        ret = list(T.violations())
        if reassemble(T).matrix != phi.matrix:
            ret.append("blocks do not reassemble to the involution")
        try:
            ret += normalize_triple(T).violations()
        except NormalizationError as e:
            context.note(f"not normalized: {e}")
        table = context.table
        for i in context.sample(range(table.order), self.elements):
            g = table.isometry(i)
            fixed = g.compose(phi).matrix == phi.compose(g).matrix
            if general_fixed_check(T, *element_triple(T, g)) != fixed:
                ret.append(f"block criterion disagrees with conjugation on element {i}")
        return ret
