"""HTTP face of the toolkit.

Every endpoint is a stateless wrapper over the core library. Domain errors
map to HTTP 400 with a body of ``{"detail": {"kind": ..., "message": ...}}``
where kind is "input" for bad data and "unidentifiable" for fits with no
unique solution; schema violations keep FastAPI's standard 422 shape.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..dataset import SynthSpec, dumps_csv, filter_dataset, parse_csv, synthesize
from ..errors import DataError, PathLossError
from ..equivalence import verify_all
from ..fitting import (
    FitResult,
    fit_abg,
    fit_ci,
    fit_cif,
    fit_fi,
    fit_xpd,
    residual_stats,
)
from ..models import (
    TR38901_LOS_PLE,
    TR38901_NLOS_OPT1_BETA,
    TR38901_NLOS_PLE,
    Tr38901Variant,
    evaluate,
    params_from_dict,
)
from ..registry import entry_to_dict, list_entries, lookup, parse_registry_key
from ..report import fit_report, registry_report, series_data, series_report
from .schemas import (
    CompareRequest,
    CompareResponse,
    EquivalenceResponse,
    EvalRequest,
    EvalResponse,
    FitRequest,
    FitResponse,
    HealthResponse,
    RegistryListResponse,
    RegistryLookupResponse,
    ReportRequest,
    ReportResponse,
    SynthRequest,
    SynthResponse,
)

app = FastAPI(
    title="plmodel",
    version=__version__,
    description="Indoor hotspot path loss models: evaluation, MMSE fitting, "
    "published-parameter registry, and reporting.",
)


@app.exception_handler(PathLossError)
async def _domain_error(request: Request, exc: PathLossError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": exc.kind, "message": str(exc)}},
    )


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "input", "message": str(exc)}},
    )


_XPD_BASE = {"cix": "ci", "cifx": "cif", "abgx": "abg"}


def _single_fit(ds, family: str, pin_f0) -> FitResult:
    if family == "ci":
        return fit_ci(ds)
    if family == "fi":
        return fit_fi(ds)
    if family == "abg":
        return fit_abg(ds)
    return fit_cif(ds, pin_f0=pin_f0)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/fit", response_model=FitResponse)
def fit(req: FitRequest) -> FitResponse:
    ds = parse_csv(req.csv_text)
    if req.pin_f0 is not None and req.model not in ("cif", "cifx"):
        raise DataError("pin_f0 applies to cif and cifx fits only")
    if req.model in _XPD_BASE:
        if req.pol is not None:
            raise DataError("pol is implied by cross-polarized fits")
        co = filter_dataset(ds, env=req.env, pol="VV", band=req.band)
        cross = filter_dataset(ds, env=req.env, pol="VH", band=req.band)
        base = _single_fit(co, _XPD_BASE[req.model], req.pin_f0)
        result = fit_xpd(base, cross)
    else:
        sub = filter_dataset(ds, env=req.env, pol=req.pol, band=req.band)
        result = _single_fit(sub, req.model, req.pin_f0)
    return FitResponse(result=result.to_dict(), stats=residual_stats(result))


@app.post("/eval", response_model=EvalResponse)
def eval_model(req: EvalRequest) -> EvalResponse:
    if (req.params is None) == (req.registry_key is None):
        raise DataError("provide exactly one of params or registry_key")
    if req.params is not None:
        params = params_from_dict(req.params)
    else:
        params = lookup(*parse_registry_key(req.registry_key)).params
    return EvalResponse(path_loss_db=float(evaluate(params, req.f, req.d)))


@app.post("/synth", response_model=SynthResponse)
def synth(req: SynthRequest) -> SynthResponse:
    spec = SynthSpec(
        generating_model=params_from_dict(req.params),
        frequencies=tuple(req.freqs),
        distance_range=(req.d_min, req.d_max),
        samples_per_frequency=req.count,
        sigma=req.sigma,
        seed=req.seed,
        environment=req.env,
        polarization=req.pol,
    )
    ds = synthesize(spec)
    return SynthResponse(csv_text=dumps_csv(ds), n_samples=len(ds))


_AGAINST = {
    "3gpp-inh-los": (Tr38901Variant.LOS, "n", TR38901_LOS_PLE),
    "3gpp-inh-nlos-opt2": (Tr38901Variant.NLOS_OPT2, "n", TR38901_NLOS_PLE),
    "3gpp-inh-nlos-opt1": (Tr38901Variant.NLOS_OPT1, "beta", TR38901_NLOS_OPT1_BETA),
}


@app.post("/compare", response_model=CompareResponse)
def compare(req: CompareRequest) -> CompareResponse:
    ds = filter_dataset(parse_csv(req.csv_text), env=req.env, pol=req.pol, band=req.band)
    _, parameter, reference = _AGAINST[req.against]
    if parameter == "n":
        result = fit_ci(ds)
        fitted = result.params.n
    else:
        result = fit_fi(ds)
        fitted = result.params.beta
    lo, hi = result.ple_ci95
    verdict = "INSIDE" if lo <= reference <= hi else "OUTSIDE"
    return CompareResponse(
        model="ci" if parameter == "n" else "fi",
        parameter=parameter,
        fitted=fitted,
        reference=reference,
        against=req.against,
        ci95=(lo, hi),
        verdict=verdict,
        sigma=result.sigma,
        n_samples=result.n_samples,
    )


@app.post("/report", response_model=ReportResponse)
def report(req: ReportRequest) -> ReportResponse:
    if (req.registry is None) == (req.fit is None):
        raise DataError("provide exactly one of registry or fit")
    if req.registry is not None:
        if req.series:
            raise DataError("series output applies to fit reports only")
        return ReportResponse(text=registry_report(req.registry, req.fmt))
    ds = parse_csv(req.csv_text) if req.csv_text else None
    if req.series:
        text = series_report(series_data(req.fit, ds, req.freqs), req.fmt)
    else:
        text = fit_report(req.fit, req.fmt)
    return ReportResponse(text=text)


@app.get("/registry", response_model=RegistryListResponse)
def registry_list(
    model: str | None = None,
    band: str | None = None,
    env: str | None = None,
    pol: str | None = None,
    source: str | None = None,
) -> RegistryListResponse:
    entries = list_entries(
        model=model, band=band, environment=env, polarization=pol, source=source
    )
    return RegistryListResponse(entries=[entry_to_dict(e) for e in entries])


@app.get("/registry/lookup", response_model=RegistryLookupResponse)
def registry_lookup(key: str) -> RegistryLookupResponse:
    entry = lookup(*parse_registry_key(key))
    return RegistryLookupResponse(entry=entry_to_dict(entry))


@app.get("/equivalence", response_model=EquivalenceResponse)
def equivalence() -> EquivalenceResponse:
    return EquivalenceResponse(claims=[r.to_dict() for r in verify_all()])
