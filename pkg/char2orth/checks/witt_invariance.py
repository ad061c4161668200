"""
Witt index, defect and anisotropic kernel do not depend on the basis
"""

from typing import List

from .. import linalg
from ..models import CheckName
from ..quadspace import is_isometric, transport, witt_decompose
from .base_check import BaseCheck, CheckContext


class WittInvarianceCheck(BaseCheck):
    name = CheckName.WITT_INVARIANCE
    per_involution = False
    sample_form = "[1,1]_|_<0>"
    trials = 100

    def applies(self, context: CheckContext) -> bool:
        return context.form.dim > 0

    def violations(self, context: CheckContext) -> List[str]:
        q = context.form
        f = q.field
        base = witt_decompose(q)
        ret = [] if base.verify() else ["decomposition of the form does not reassemble"]
        for trial in range(self.trials):
            moved = transport(q, linalg.random_invertible(f, q.dim, context.rng))
            w = witt_decompose(moved)
            if (w.witt_index, w.defect) != (base.witt_index, base.defect):
                ret.append(f"trial {trial}: (m, d) = ({w.witt_index}, {w.defect}) "
                           f"instead of ({base.witt_index}, {base.defect})")
            elif not w.verify():
                ret.append(f"trial {trial}: decomposition does not reassemble")
            elif not is_isometric(q, moved):
                ret.append(f"trial {trial}: anisotropic kernels are not isometric")
        context.note(f"m={base.witt_index}, d={base.defect}, {self.trials} basis changes")
        return ret
