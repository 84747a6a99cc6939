"""Pydantic schemas for verification reports and subcommand payloads."""
import json
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

from reflekt.schemas.group import ElementModel, GroupKeyModel

REPORT_SCHEMA = "reflekt-report/1"

Status = Literal["pass", "fail", "skipped"]


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str
    topic: str = Field(..., description="The mathematical statement being checked")
    status: Status
    reason: Optional[str] = None
    elapsed_ms: Optional[float] = None
    details: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Response schema for ``verify``: every check, in canonical key order."""

    report_schema: str = Field(REPORT_SCHEMA, serialization_alias="schema")
    version: str
    keys: list[str]
    checks: list[CheckResult]
    config: dict[str, Any]

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> str:
        """Stable JSON: sorted keys, unset optional fields dropped."""
        return json.dumps(
            self.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=2
        )


class CycloModel(BaseModel):
    r: int
    coeffs: list[list[str]]


class IrrEntry(BaseModel):
    theta: list[list[int]]
    orbit_size: int
    degree: int
    values: Optional[dict[str, CycloModel]] = None


class CharsPayload(BaseModel):
    """Response schema for the ``chars`` subcommand."""

    key: GroupKeyModel
    degrees: list[int]
    irr: list[IrrEntry]


class GimClass(BaseModel):
    rep: ElementModel
    centralizer_order: int
    # element → value; ±1 for sign-valued characters
    signs: dict[str, Union[int, str]] = Field(..., serialization_alias="lambda")


class GimPayload(BaseModel):
    """Response schema for the ``gim`` subcommand."""

    key: GroupKeyModel
    tau: str = "inverse-transpose"
    exists: bool
    reason: str
    classes: list[GimClass]
    verified: bool


class VariantOutcome(BaseModel):
    variant: str
    passed: Optional[bool] = None
    reason: Optional[str] = None
    model_character: Optional[list[int]] = None
    counting_character: Optional[list[int]] = None


class GelfandPayload(BaseModel):
    """Response schema for the ``gelfand`` subcommand."""

    key: GroupKeyModel
    symmetric_count: int
    degree_sum: int
    variants: list[VariantOutcome]


class AutFormula(BaseModel):
    c: str
    c_prime: str
    e: int
    phi_r: int


class AutPayload(BaseModel):
    """Response schema for the ``aut`` subcommand."""

    key: GroupKeyModel
    aut_order: int
    out_order: int
    center_order: int
    formula: AutFormula
    enumerated: Optional[int] = None
    match: Optional[bool] = None


class CachePayload(BaseModel):
    """Response schema for the ``cache`` subcommand."""

    cache_dir: str
    roundtrip: dict[str, bool]
    purged: list[str]
