"""Large-scale path loss model families for indoor hotspot channels.

All evaluators return the deterministic mean path loss in dB. Shadow fading
is never added here; synthesis applies it separately so that model curves
stay exact. Frequencies are carrier frequencies in GHz, distances are 3D
separation in meters, and the close-in families are anchored at a 1 m
reference distance in free space.

Families:

* CI    — close-in free space reference: FSPL(f, 1 m) + 10 n log10(d)
* FI    — floating intercept (single frequency): alpha + 10 beta log10(d)
* ABG   — alpha-beta-gamma: 10 alpha log10(d) + beta + 10 gamma log10(f)
* CIF   — CI with a linear frequency taper on the exponent
* CIX/CIFX/ABGX — any of CI/CIF/ABG plus a constant cross-polarization
  discrimination offset for V-H links
* TR 38.901 InH — the 3GPP indoor-office defaults (LOS and both NLOS options)

Every family also serializes to and from a flat JSON-compatible dict keyed
by ``model`` so parameter sets can travel through files, HTTP bodies, and
CLI output unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

# Free-space path loss at the 1 m reference: 32.4 + 20 log10(f/GHz).
FSPL_OFFSET_DB = 32.4

# TR 38.901 indoor hotspot (InH) defaults.
TR38901_LOS_PLE = 1.73
TR38901_NLOS_PLE = 3.19  # NLOS option 2 (close-in form)
TR38901_NLOS_OPT1_INTERCEPT = 17.3
TR38901_NLOS_OPT1_FREQ_SLOPE = 24.9
TR38901_NLOS_OPT1_BETA = 3.83

MIN_DISTANCE_M = 1.0


class Tr38901Variant(str, Enum):
    LOS = "LOS"
    NLOS_OPT1 = "NLOS_OPT1"
    NLOS_OPT2 = "NLOS_OPT2"


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite")


def _require_sigma(sigma: float) -> None:
    _require_finite("sigma", sigma)
    if sigma < 0.0:
        raise ValueError("sigma must be non-negative")


@dataclass(frozen=True)
class CiParams:
    """Close-in model: PL(f, d) = FSPL(f, 1 m) + 10 n log10(d).

    ``n`` is the path loss exponent; ``sigma`` the shadow fading standard
    deviation in dB (informational, not used by the evaluator).
    """

    n: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("n", self.n)
        _require_sigma(self.sigma)


@dataclass(frozen=True)
class FiParams:
    """Floating-intercept model: PL(d) = alpha + 10 beta log10(d).

    Frequency does not appear; FI parameters are per-band.
    """

    alpha: float
    beta: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("alpha", self.alpha)
        _require_finite("beta", self.beta)
        _require_sigma(self.sigma)


@dataclass(frozen=True)
class AbgParams:
    """Alpha-beta-gamma model: PL = 10 alpha log10(d) + beta + 10 gamma log10(f)."""

    alpha: float
    beta: float
    gamma: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("alpha", self.alpha)
        _require_finite("beta", self.beta)
        _require_finite("gamma", self.gamma)
        _require_sigma(self.sigma)


@dataclass(frozen=True)
class CifParams:
    """CI with frequency-tapered exponent.

    PL = FSPL(f, 1 m) + 10 n (1 + b (f - f0) / f0) log10(d), where f0 is the
    anchor frequency the taper pivots around (GHz, positive).
    """

    n: float
    b: float
    f0: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("n", self.n)
        _require_finite("b", self.b)
        _require_finite("f0", self.f0)
        if self.f0 <= 0.0:
            raise ValueError("f0 must be positive")
        _require_sigma(self.sigma)


@dataclass(frozen=True)
class XpdExtension:
    """Cross-polarized variant of a co-polarized base fit.

    V-H path loss is modeled as the V-V mean path loss plus a constant
    cross-polarization discrimination offset ``xpd`` in dB; the base
    parameters stay frozen at their V-V values.
    """

    base: Union["CiParams", "CifParams", "AbgParams"]
    xpd: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.base, (CiParams, CifParams, AbgParams)):
            raise ValueError("xpd base must be a CI, CIF, or ABG parameter set")
        _require_finite("xpd", self.xpd)
        _require_sigma(self.sigma)


@dataclass(frozen=True)
class Tr38901InhModel:
    """One of the TR 38.901 InH reference curves."""

    variant: Tr38901Variant

    def __post_init__(self) -> None:
        if not isinstance(self.variant, Tr38901Variant):
            object.__setattr__(self, "variant", Tr38901Variant(self.variant))


ModelParams = Union[CiParams, FiParams, AbgParams, CifParams, XpdExtension]
AnyModel = Union[ModelParams, Tr38901InhModel]


def _check_freq(f) -> np.ndarray:
    if f is None:
        raise ValueError("frequency must be provided for this model")
    arr = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("frequency must be positive")
    return arr


def _check_dist(d) -> np.ndarray:
    arr = np.asarray(d, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < MIN_DISTANCE_M):
        raise ValueError("distance below 1 m reference")
    return arr


def _ret(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def fspl_1m(f):
    """Free-space path loss in dB at the 1 m reference distance, f in GHz."""
    f = _check_freq(f)
    return _ret(FSPL_OFFSET_DB + 20.0 * np.log10(f))


def eval_ci(params: CiParams, f, d):
    """Mean CI path loss in dB; accepts scalars or arrays for f and d."""
    f = _check_freq(f)
    d = _check_dist(d)
    return _ret(FSPL_OFFSET_DB + 20.0 * np.log10(f) + 10.0 * params.n * np.log10(d))


def eval_fi(params: FiParams, d):
    """Mean FI path loss in dB; frequency does not enter the model."""
    d = _check_dist(d)
    return _ret(params.alpha + 10.0 * params.beta * np.log10(d))


def eval_abg(params: AbgParams, f, d):
    """Mean ABG path loss in dB."""
    f = _check_freq(f)
    d = _check_dist(d)
    return _ret(
        10.0 * params.alpha * np.log10(d)
        + params.beta
        + 10.0 * params.gamma * np.log10(f)
    )


def eval_cif(params: CifParams, f, d):
    """Mean CIF path loss in dB; the exponent tapers linearly around f0."""
    f = _check_freq(f)
    d = _check_dist(d)
    slope = params.n * (1.0 + params.b * (f - params.f0) / params.f0)
    return _ret(FSPL_OFFSET_DB + 20.0 * np.log10(f) + 10.0 * slope * np.log10(d))


def eval_cross(params: XpdExtension, f, d):
    """Mean V-H path loss: base co-polarized mean plus the XPD offset."""
    return evaluate(params.base, f, d) + params.xpd


def eval_3gpp_inh(model: Tr38901InhModel, f, d):
    """Mean path loss of a TR 38.901 InH variant in dB."""
    if model.variant is Tr38901Variant.LOS:
        return eval_ci(CiParams(TR38901_LOS_PLE), f, d)
    if model.variant is Tr38901Variant.NLOS_OPT2:
        return eval_ci(CiParams(TR38901_NLOS_PLE), f, d)
    f = _check_freq(f)
    d = _check_dist(d)
    alpha = TR38901_NLOS_OPT1_INTERCEPT + TR38901_NLOS_OPT1_FREQ_SLOPE * np.log10(f)
    return _ret(alpha + 10.0 * TR38901_NLOS_OPT1_BETA * np.log10(d))


def evaluate(model: AnyModel, f, d):
    """Dispatch to the family evaluator; FI ignores f (None allowed)."""
    if isinstance(model, CiParams):
        return eval_ci(model, f, d)
    if isinstance(model, FiParams):
        return eval_fi(model, d)
    if isinstance(model, AbgParams):
        return eval_abg(model, f, d)
    if isinstance(model, CifParams):
        return eval_cif(model, f, d)
    if isinstance(model, XpdExtension):
        return eval_cross(model, f, d)
    if isinstance(model, Tr38901InhModel):
        return eval_3gpp_inh(model, f, d)
    raise TypeError(f"not a path loss model: {type(model).__name__}")


# --- flat dict (de)serialization -------------------------------------------

_TR38901_TOKENS = {
    Tr38901Variant.LOS: "3gpp-inh-los",
    Tr38901Variant.NLOS_OPT1: "3gpp-inh-nlos-opt1",
    Tr38901Variant.NLOS_OPT2: "3gpp-inh-nlos-opt2",
}
_TOKEN_VARIANTS = {v: k for k, v in _TR38901_TOKENS.items()}

# Base family token -> cross-polarized token.
_XPD_TOKENS = {"ci": "cix", "cif": "cifx", "abg": "abgx"}

# Family token -> required numeric fields (sigma is always optional).
MODEL_FIELDS = {
    "ci": ("n",),
    "fi": ("alpha", "beta"),
    "abg": ("alpha", "beta", "gamma"),
    "cif": ("n", "b", "f0"),
    "cix": ("n", "xpd"),
    "cifx": ("n", "b", "f0", "xpd"),
    "abgx": ("alpha", "beta", "gamma", "xpd"),
}


def model_token(params: AnyModel) -> str:
    """Family token used in serialized form and registry keys."""
    if isinstance(params, CiParams):
        return "ci"
    if isinstance(params, FiParams):
        return "fi"
    if isinstance(params, AbgParams):
        return "abg"
    if isinstance(params, CifParams):
        return "cif"
    if isinstance(params, XpdExtension):
        return _XPD_TOKENS[model_token(params.base)]
    if isinstance(params, Tr38901InhModel):
        return _TR38901_TOKENS[params.variant]
    raise TypeError(f"not a path loss model: {type(params).__name__}")


def params_to_dict(params: AnyModel) -> dict:
    """Flat JSON-compatible form: {'model': token, <field>: value, ...}."""
    token = model_token(params)
    if isinstance(params, Tr38901InhModel):
        return {"model": token}
    out = {"model": token}
    if isinstance(params, XpdExtension):
        base = params_to_dict(params.base)
        base.pop("model")
        base.pop("sigma")
        out.update(base)
        out["xpd"] = params.xpd
    else:
        for field in MODEL_FIELDS[token]:
            out[field] = getattr(params, field)
    out["sigma"] = params.sigma
    return out


def params_from_dict(mapping: dict) -> AnyModel:
    """Inverse of params_to_dict; extra keys are ignored, sigma defaults to 0."""
    if "model" not in mapping:
        raise ValueError("missing 'model' key in parameter set")
    token = str(mapping["model"]).lower()
    if token in _TOKEN_VARIANTS:
        return Tr38901InhModel(_TOKEN_VARIANTS[token])
    if token not in MODEL_FIELDS:
        raise ValueError(f"unknown model '{token}'")

    def grab(field: str) -> float:
        if field not in mapping or mapping[field] is None:
            raise ValueError(f"missing parameter '{field}' for model '{token}'")
        return float(mapping[field])

    sigma = float(mapping.get("sigma") or 0.0)
    if token == "ci":
        return CiParams(grab("n"), sigma)
    if token == "fi":
        return FiParams(grab("alpha"), grab("beta"), sigma)
    if token == "abg":
        return AbgParams(grab("alpha"), grab("beta"), grab("gamma"), sigma)
    if token == "cif":
        return CifParams(grab("n"), grab("b"), grab("f0"), sigma)
    if token == "cix":
        base = CiParams(grab("n"))
    elif token == "cifx":
        base = CifParams(grab("n"), grab("b"), grab("f0"))
    else:  # abgx
        base = AbgParams(grab("alpha"), grab("beta"), grab("gamma"))
    return XpdExtension(base=base, xpd=grab("xpd"), sigma=sigma)
