"""Request/response schemas for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..skewtri import DEFAULT_BUDGET
from ..theorems import DEFAULT_SAMPLE, DEFAULT_SEED


class HealthResponse(BaseModel):
    status: str
    name: str
    version: str


class AnalyzeRequest(BaseModel):
    ring: str


class AnalyzeResponse(BaseModel):
    ring: str
    order: int
    zero: int
    one: int
    is_local: bool
    units: list[int]
    radical: list[int]
    idempotents: list[int]
    radical_nilpotency_index: int
    one_is_sum_of_two_units: bool
    is_bleached: Optional[bool]  # null when the ring is not local
    elements: list[str]


class DecomposeRequest(BaseModel):
    ring: str
    sigma: str = "id"
    matrix: str
    n: Optional[int] = Field(default=None, ge=1)
    method: Literal["constructive", "brute", "very-clean"] = "constructive"
    budget: int = Field(default=DEFAULT_BUDGET, gt=0)


class DecompositionChecks(BaseModel):
    idempotent: bool
    commutes: bool
    sum: bool
    unit: bool


class DecomposeResponse(BaseModel):
    ring: str
    sigma: str
    n: int
    matrix: list[list[int]]
    found: bool
    kind: Optional[str] = None
    case: Optional[str] = None
    e: Optional[list[list[int]]] = None
    u: Optional[list[list[int]]] = None
    checks: Optional[DecompositionChecks] = None
    pretty: Optional[dict[str, str]] = None


class VerifyRequest(BaseModel):
    ring: str
    sigma: str = "id"
    suite: Literal["2.1", "3.1", "4.1", "2.6", "corollaries", "all"] = "all"
    budget: int = Field(default=DEFAULT_BUDGET, gt=0)
    sample_size: int = Field(default=DEFAULT_SAMPLE, gt=0)
    seed: int = DEFAULT_SEED
    sweep_limit: Optional[int] = Field(default=None, gt=0)
    timings: bool = False


class ClaimRecord(BaseModel):
    claim_id: str
    ring: str
    sigma: str
    status: str
    checked: int
    witness: Optional[dict] = None
    elapsed_ms: Optional[int] = None
    seed: Optional[int] = None
    mode: Optional[str] = None
    reason: Optional[str] = None
    details: Optional[dict] = None


class ToolInfo(BaseModel):
    name: str
    version: str


class VerifyResponse(BaseModel):
    tool: ToolInfo
    config: dict
    failed: bool
    reports: list[ClaimRecord]


class SweepRequest(BaseModel):
    ring: str
    sigma: str = "id"
    n: int = Field(default=2, ge=2)
    method: Literal["constructive", "brute"] = "constructive"
    budget: int = Field(default=DEFAULT_BUDGET, gt=0)
    sample_size: int = Field(default=DEFAULT_SAMPLE, gt=0)
    seed: int = DEFAULT_SEED
    sweep_limit: Optional[int] = Field(default=None, gt=0)
    timings: bool = False


class SweepResponse(BaseModel):
    ring: str
    sigma: str
    n: int
    method: str
    mode: str
    checked: int
    seed: Optional[int]
    all_clean: bool
    failures: list[dict]
    elapsed_ms: Optional[int] = None
