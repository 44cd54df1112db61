"""Request/response bodies for the HTTP service.

Datasets travel as CSV text inside JSON bodies (the same six-column format
the CLI reads and writes), parameter sets as their flat dict form. Keeping
both representations identical across CLI files, HTTP, and library calls is
what makes the thin-client CLI byte-stable.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

FitFamily = Literal["ci", "fi", "abg", "cif", "cix", "cifx", "abgx"]
EnvToken = Literal["los", "nlos", "LOS", "NLOS"]
PolToken = Literal["vv", "vh", "VV", "VH"]
ReportFormat = Literal["md", "csv", "json"]
AgainstToken = Literal["3gpp-inh-los", "3gpp-inh-nlos-opt1", "3gpp-inh-nlos-opt2"]


class HealthResponse(BaseModel):
    status: str
    version: str


class ResidualStats(BaseModel):
    mean: float
    sigma: float
    max_abs: float


class FitRequest(BaseModel):
    csv_text: str
    model: FitFamily
    env: Optional[EnvToken] = None
    pol: Optional[PolToken] = None
    band: Optional[tuple[float, float]] = None
    pin_f0: Optional[float] = None


class FitResponse(BaseModel):
    result: dict[str, Any]
    stats: ResidualStats


class EvalRequest(BaseModel):
    params: Optional[dict[str, Any]] = None
    registry_key: Optional[str] = None
    f: Optional[float] = None
    d: float


class EvalResponse(BaseModel):
    path_loss_db: float


class SynthRequest(BaseModel):
    params: dict[str, Any]
    freqs: list[float] = Field(min_length=1)
    count: int = Field(ge=1)
    sigma: float = 0.0
    seed: int = 0
    d_min: float = 1.0
    d_max: float = 100.0
    env: EnvToken = "los"
    pol: PolToken = "vv"


class SynthResponse(BaseModel):
    csv_text: str
    n_samples: int


class CompareRequest(BaseModel):
    csv_text: str
    against: AgainstToken
    env: Optional[EnvToken] = None
    pol: Optional[PolToken] = None
    band: Optional[tuple[float, float]] = None


class CompareResponse(BaseModel):
    model: str
    parameter: str
    fitted: float
    reference: float
    against: str
    ci95: tuple[float, float]
    verdict: Literal["INSIDE", "OUTSIDE"]
    sigma: float
    n_samples: int


class ReportRequest(BaseModel):
    registry: Optional[str] = None
    fit: Optional[dict[str, Any]] = None
    csv_text: Optional[str] = None
    fmt: ReportFormat = "md"
    series: bool = False
    freqs: Optional[list[float]] = None


class ReportResponse(BaseModel):
    text: str


class RegistryListResponse(BaseModel):
    entries: list[dict[str, Any]]


class RegistryLookupResponse(BaseModel):
    entry: dict[str, Any]


class ClaimResult(BaseModel):
    name: str
    holds: bool
    worst_gap_db: float
    worst_freq_ghz: float
    worst_distance_m: float
    max_abs_gap_db: float


class EquivalenceResponse(BaseModel):
    claims: list[ClaimResult]
