"""
Laws of the A-group and of the (phi_U, A) semidirect product on fixed elements
"""

from typing import List

from .. import linalg
from ..fixedpoints import conjugation_action, diagonal_fixed_structure, inverse_law_check, product_law_check, star_map
from ..models import CheckName, InvolutionKind
from ..quadspace import is_nonsingular
from .base_check import BaseCheck, CheckContext


class AGroupLawsCheck(BaseCheck):
    name = CheckName.AGROUP_LAWS
    sample_form = "[1,1]_|_[1,1]"
    elements = 8

    def applies(self, context: CheckContext) -> bool:
        return is_nonsingular(context.form) and context.descriptor.kind is InvolutionKind.DIAGONAL

    def violations(self, context: CheckContext) -> List[str]:
        structure = diagonal_fixed_structure(context.form, context.involution)
        q = structure.form
        f = q.field
        l = structure.l
        group = structure.a_group
        members = group.elements
        ret = []
        for a in context.sample(structure.beta_group, self.elements):
            star = star_map(f, a)
            for i in range(l):
                u = linalg.combine(f, a[i], structure.U, q.dim)
                for j in range(l):
                    v = linalg.combine(f, star[j], structure.v, q.dim)
                    if q.bilinear(u, v) != (f.one if i == j else f.zero):
                        ret.append(f"B(phi_U u_{i + 1}, phi_U^* v_{j + 1}) breaks the pairing")
            for A in members:
                if conjugation_action(f, a, A) not in group:
                    ret.append("the action of phi_U leaves the A-group")
                    break
        fixed = context.sample(list(context.centralizer), self.elements)
        parts = [structure.a_part(g) for g in fixed]
        # with X = 0 the V -> U block of a fixed element is phi_U A with A in the A-group
        split = structure.p == 0
        for g, (a, A) in zip(fixed, parts):
            if split and A not in group:
                ret.append("A part of a fixed element is not in the A-group")
            lhs, rhs = inverse_law_check(f, a, A)
            if lhs != rhs:
                ret.append("inverse law fails")
            for h, (b, C) in zip(fixed, parts):
                lhs, rhs = product_law_check(f, a, A, b, C)
                if lhs != rhs:
                    ret.append("product law fails")
                if not split:
                    continue
                moved = linalg.matmul(f, linalg.inverse(f, b), linalg.matmul(f, A, star_map(f, b)))
                if structure.a_part(g.compose(h))[1] != linalg.madd(f, moved, C):
                    ret.append("A part of a product is not theta^-1 A theta^* + C")
        context.note(f"|A| = {len(members)}, |O(beta_U)| = {len(structure.beta_group)}")
        return ret
