"""
Shared models for char2orth
Contains enums and report structures used across the library and the CLI
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class FieldKind(str, Enum):
    BINARY_EXT = "binary_ext"
    RAT_FUNC = "ratfunc"


class InvolutionKind(str, Enum):
    RADICAL = "radical"
    NULL = "null"
    DIAGONAL = "diagonal"
    HYPERBOLIC = "hyperbolic"
    GENERAL_TRIPLE = "general_triple"


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.TRUE if value else cls.FALSE


class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


class CheckName(str, Enum):
    GROUP_CLOSURE = "group_closure"
    ORBIT_CONSTANCY = "orbit_constancy"
    CONJUGACY = "conjugacy"
    TRIPLE_LAWS = "triple_laws"
    RADICAL_STRUCTURE = "radical_structure"
    DIAGONAL_STRUCTURE = "diagonal_structure"
    AGROUP_LAWS = "agroup_laws"
    WITT_INVARIANCE = "witt_invariance"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


# Pydantic report models

class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(default="char2orth/report/v1", alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class IsometryReport(Report):
    schema_id: str = Field(default="char2orth/isometry/v1", alias="schema")
    field: str
    dimension: int
    rows: List[List[Any]]


class WittReport(Report):
    schema_id: str = Field(default="char2orth/witt/v1", alias="schema")
    field: str
    form: str
    dimension: int
    witt_index: int
    defect: int
    aniso_pairs: List[List[str]] = Field(default_factory=list)
    aniso_diag: List[str] = Field(default_factory=list)
    arf: Optional[str] = None
    normal_form: str
    change_of_basis: List[List[Any]] = Field(default_factory=list)


class DescriptorReport(Report):
    schema_id: str = Field(default="char2orth/descriptor/v1", alias="schema")
    field: str
    kind: InvolutionKind
    residue: int
    length: int
    norm_signature: List[str] = Field(default_factory=list)
    dim_u: Optional[int] = None
    residual_form: List[str] = Field(default_factory=list)


class ConjugacyReport(Report):
    schema_id: str = Field(default="char2orth/conjugacy/v1", alias="schema")
    field: str
    first: DescriptorReport
    second: DescriptorReport
    verdict: Verdict
    witness: Optional[List[List[Any]]] = None


class ClassRow(BaseModel):
    descriptor: DescriptorReport
    size: int
    centralizer_order: int
    representative: List[List[Any]]


class CensusReport(Report):
    schema_id: str = Field(default="char2orth/census/v1", alias="schema")
    field: str
    form: str
    group_order: int
    involution_count: int
    classes: List[ClassRow] = Field(default_factory=list)
    class_equation_ok: bool
    equal_centralizer_pairs: List[List[int]] = Field(default_factory=list)


class FixedStructureReport(Report):
    schema_id: str = Field(default="char2orth/fixgroup/v1", alias="schema")
    field: str
    form: str
    descriptor: DescriptorReport
    centralizer_order: Optional[int] = None
    predicted_order: int
    factors: Dict[str, int] = Field(default_factory=dict)
    reference_orders: Dict[str, int] = Field(default_factory=dict)
    matches: Optional[bool] = None


class CheckOutcome(BaseModel):
    check: CheckName
    status: CheckStatus
    subject: Optional[str] = None
    residual: Optional[str] = None
    detail: str = ""


class VerifyReport(Report):
    schema_id: str = Field(default="char2orth/verify/v1", alias="schema")
    field: str
    form: str
    group_order: int = 0
    involutions: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    outcomes: List[CheckOutcome] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0
