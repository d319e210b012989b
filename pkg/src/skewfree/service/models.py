"""Pydantic models for the verification service and the CLI front end.

``RunConfig`` is the single internal request shape; the per-endpoint request
models are thin conveniences that convert into it.  Response models mirror
the report dictionaries emitted by ``skewfree.service.dispatch.run`` (the
same dictionaries the CLI prints), under the versioned key ``schema =
"skewfree/1"``.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "skewfree/1"

Command = Literal[
    "classify", "check-free", "certify", "verify-relation", "dims",
    "henon-degrees", "growth", "parity",
]


class RunConfig(BaseModel):
    """One verification run: a command plus its inputs."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    sigma: Optional[str] = None          # automorphism spec string
    matrix: Optional[str] = None         # "a,b;c,d" for matrix-based commands
    gens: str = "x,y"                    # comma-separated generator specs
    t_power: int = Field(default=1, ge=1)
    depth: int = Field(default=8, ge=1)
    horizon: int = Field(default=8, ge=1)
    length: int = Field(default=16, ge=1)      # growth series length
    weights: str = "2,1"                 # weighted degree for henon-degrees
    relation: Optional[str] = None
    a: str = "1"                         # quadratic Henon family parameters
    b: str = "1"
    g: str = "y"                         # doubling test element
    mode: Optional[Literal["POLY", "LAURENT"]] = None
    graded: bool = False
    oracle: Literal["fast", "rank", "both"] = "both"
    output: Literal["json", "text"] = "json"


class _Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    exit_code: int


class CatalogEntry(BaseModel):
    condition: str
    relation: str
    t_degree: int
    verified: bool


class ClassifyRequest(BaseModel):
    matrix: str


class ClassifyResponse(_Report):
    matrix: list[list[int]]
    trace: int
    det: int
    rho: str
    branch: str
    order: Optional[int]
    catalog: list[CatalogEntry]
    free_t_power_hint: Optional[int]
    even_t_power_hint: Optional[int]


class CheckFreeRequest(BaseModel):
    sigma: str
    gens: str = "x,y"
    t_power: int = Field(default=1, ge=1)
    depth: int = Field(default=8, ge=1)
    mode: Optional[Literal["POLY", "LAURENT"]] = None


class CheckFreeResponse(_Report):
    sigma: str
    mode: str
    generators: list[str]
    generator_names: list[str]
    t_power: int
    depth: int
    dims: list[int]
    expected: list[int]
    verdict: str
    certificate: Optional[str]
    witness: Optional[str]
    first_deficient: Optional[int]


class CertifyRequest(BaseModel):
    matrix: str
    t_power: int = Field(default=1, ge=1)


class CertifyResponse(_Report):
    matrix: list[list[int]]
    t_power: int
    status: str
    reason: Optional[str]
    beta: Optional[str]
    alpha: Optional[str]
    nu_x: Optional[str]
    nu_y: Optional[str]
    conclusion: str


class VerifyRelationRequest(BaseModel):
    sigma: str
    relation: str
    gens: str = "x,y"
    t_power: int = Field(default=1, ge=1)
    mode: Optional[Literal["POLY", "LAURENT"]] = None


class VerifyRelationResponse(_Report):
    sigma: str
    relation: str
    holds: bool
    t_degree: int


class DimsRequest(BaseModel):
    matrix: str
    depth: int = Field(default=8, ge=1)
    oracle: Literal["fast", "rank", "both"] = "both"


class DimsResponse(_Report):
    matrix: list[list[int]]
    depth: int
    dims_fast: Optional[list[int]]
    dims_rank: Optional[list[int]]
    expected: list[int]
    all_maximal: bool


class HenonDegreesRequest(BaseModel):
    a: str = "1"
    b: str = "1"
    weights: str = "2,1"
    horizon: int = Field(default=8, ge=1)
    g: str = "y"


class HenonDegreesResponse(_Report):
    a: str
    b: str
    weights: list[int]
    horizon: int
    degrees_x: list[int]
    degrees_y: list[int]
    doubling_element: str
    doubling_status: str
    doubling_degrees: list[int]
    min_t_power: Optional[int]
    failed_at: Optional[int]


class GrowthRequest(BaseModel):
    sigma: str
    gens: str
    length: int = Field(default=16, ge=1)
    graded: bool = False
    mode: Optional[Literal["POLY", "LAURENT"]] = None


class GrowthResponse(_Report):
    sigma: str
    generators: list[str]
    length: int
    graded: bool
    basis_spec: str
    dims: list[int]
    classification: str
    raw_slope: Optional[float]
    degree: Optional[int]
    growth_rate: Optional[float]


class ParityRequest(BaseModel):
    matrix: str


class ParityResponse(_Report):
    matrix: list[list[int]]
    status: str
    row_parities: list[int]


class ErrorReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    exit_code: int
    error: str


class HealthResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    status: str
    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    version: str


RESPONSE_MODELS: dict[str, type[BaseModel]] = {
    "classify": ClassifyResponse,
    "check-free": CheckFreeResponse,
    "certify": CertifyResponse,
    "verify-relation": VerifyRelationResponse,
    "dims": DimsResponse,
    "henon-degrees": HenonDegreesResponse,
    "growth": GrowthResponse,
    "parity": ParityResponse,
}


def report_payload(report: dict[str, Any]) -> dict[str, Any]:
    """Validate a dispatch report against its response model and dump it."""
    model = RESPONSE_MODELS[report["command"]]
    return model.model_validate(report).model_dump(by_alias=True)
