from .agroup_laws import AGroupLawsCheck
from .base_check import BaseCheck, CheckContext
from .check_manager import VerificationJob, VerificationManager, VerificationResult, tampered_matrix
from .conjugacy import ConjugacyCheck
from .diagonal_structure import DiagonalStructureCheck
from .group_closure import GroupClosureCheck
from .orbit_constancy import OrbitConstancyCheck
from .radical_structure import RadicalStructureCheck
from .triple_laws import TripleLawsCheck
from .witt_invariance import WittInvarianceCheck

__all__ = [
    "AGroupLawsCheck",
    "BaseCheck",
    "CheckContext",
    "ConjugacyCheck",
    "DiagonalStructureCheck",
    "GroupClosureCheck",
    "OrbitConstancyCheck",
    "RadicalStructureCheck",
    "TripleLawsCheck",
    "VerificationJob",
    "VerificationManager",
    "VerificationResult",
    "WittInvarianceCheck",
    "tampered_matrix",
]
