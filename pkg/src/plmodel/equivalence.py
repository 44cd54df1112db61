"""Cross-family identities between the model parameterizations.

The CI family embeds into ABG (alpha = n, beta = the 1 m FSPL offset,
gamma = 2), the TR 38.901 InH curves are CI/FI/ABG models in disguise, and
CIF with b = 0 collapses to CI. Each identity is stated as an
EquivalenceClaim and verified numerically on a fixed frequency/distance
grid rather than symbolically, so any transcription slip in either side
shows up as a dB gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .models import (
    AbgParams,
    CifParams,
    CiParams,
    FiParams,
    FSPL_OFFSET_DB,
    ModelParams,
    TR38901_LOS_PLE,
    TR38901_NLOS_OPT1_BETA,
    TR38901_NLOS_OPT1_FREQ_SLOPE,
    TR38901_NLOS_OPT1_INTERCEPT,
    TR38901_NLOS_PLE,
    Tr38901InhModel,
    Tr38901Variant,
    eval_fi,
    evaluate,
    fspl_1m,
)

# Verification grid: spans the measured bands plus the wide-range endpoints.
DEFAULT_FREQUENCIES = (0.5, 1.0, 6.75, 16.95, 28.0, 73.0, 100.0, 142.0, 150.0)
DEFAULT_DISTANCES = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
DEFAULT_MAX_GAP_DB = 1e-9


def abg_from_ci(n: float) -> AbgParams:
    """ABG parameters that reproduce CI(n) exactly at every (f, d)."""
    return AbgParams(alpha=n, beta=FSPL_OFFSET_DB, gamma=2.0)


def fi_from_3gpp(variant: Tr38901Variant, f: float) -> FiParams:
    """Per-frequency FI parameters of a TR 38.901 InH variant.

    LOS and NLOS option 2 are close-in curves, so their FI intercept is the
    1 m FSPL at f; option 1 has its own frequency-dependent intercept.
    """
    variant = Tr38901Variant(variant)
    if variant is Tr38901Variant.LOS:
        return FiParams(alpha=fspl_1m(f), beta=TR38901_LOS_PLE)
    if variant is Tr38901Variant.NLOS_OPT2:
        return FiParams(alpha=fspl_1m(f), beta=TR38901_NLOS_PLE)
    alpha = TR38901_NLOS_OPT1_INTERCEPT + TR38901_NLOS_OPT1_FREQ_SLOPE * np.log10(
        float(f)
    )
    return FiParams(alpha=float(alpha), beta=TR38901_NLOS_OPT1_BETA)


@dataclass(frozen=True)
class PerFrequencyFi:
    """Claim side that re-derives FI parameters from a 3GPP variant at each
    grid frequency before evaluating."""

    variant: Tr38901Variant


ClaimSide = Union[ModelParams, Tr38901InhModel, PerFrequencyFi]


def _eval_side(side: ClaimSide, f: float, d: np.ndarray) -> np.ndarray:
    if isinstance(side, PerFrequencyFi):
        return np.asarray(eval_fi(fi_from_3gpp(side.variant, f), d), dtype=float)
    return np.asarray(evaluate(side, f, d), dtype=float)


@dataclass(frozen=True)
class EquivalenceClaim:
    """Two model sides asserted to agree on a frequency/distance grid."""

    name: str
    lhs: ClaimSide
    rhs: ClaimSide
    frequencies: tuple[float, ...] = DEFAULT_FREQUENCIES
    distances: tuple[float, ...] = DEFAULT_DISTANCES
    max_abs_gap: float = DEFAULT_MAX_GAP_DB


@dataclass(frozen=True)
class ClaimReport:
    """Verification outcome: worst absolute gap and where it occurred."""

    claim: EquivalenceClaim
    holds: bool
    worst_gap: float
    worst_frequency: float
    worst_distance: float

    def to_dict(self) -> dict:
        return {
            "name": self.claim.name,
            "holds": self.holds,
            "worst_gap_db": self.worst_gap,
            "worst_freq_ghz": self.worst_frequency,
            "worst_distance_m": self.worst_distance,
            "max_abs_gap_db": self.claim.max_abs_gap,
        }


def verify_claim(claim: EquivalenceClaim) -> ClaimReport:
    """Evaluate both sides over the claim grid and report the worst gap."""
    d = np.asarray(claim.distances, dtype=float)
    worst = -1.0
    worst_f = claim.frequencies[0]
    worst_d = claim.distances[0]
    for f in claim.frequencies:
        gaps = np.abs(_eval_side(claim.lhs, f, d) - _eval_side(claim.rhs, f, d))
        j = int(np.argmax(gaps))
        if float(gaps[j]) > worst:
            worst = float(gaps[j])
            worst_f = float(f)
            worst_d = float(d[j])
    return ClaimReport(
        claim=claim,
        holds=worst <= claim.max_abs_gap,
        worst_gap=worst,
        worst_frequency=worst_f,
        worst_distance=worst_d,
    )


def builtin_claims() -> tuple[EquivalenceClaim, ...]:
    """The stock identities connecting 3GPP InH, CI, FI, ABG, and CIF."""
    los = Tr38901InhModel(Tr38901Variant.LOS)
    opt1 = Tr38901InhModel(Tr38901Variant.NLOS_OPT1)
    opt2 = Tr38901InhModel(Tr38901Variant.NLOS_OPT2)
    return (
        EquivalenceClaim("inh-los-vs-ci", los, CiParams(n=TR38901_LOS_PLE)),
        EquivalenceClaim("inh-los-vs-abg", los, abg_from_ci(TR38901_LOS_PLE)),
        EquivalenceClaim("inh-los-vs-fi", los, PerFrequencyFi(Tr38901Variant.LOS)),
        EquivalenceClaim("inh-nlos-opt2-vs-ci", opt2, CiParams(n=TR38901_NLOS_PLE)),
        EquivalenceClaim("inh-nlos-opt2-vs-abg", opt2, abg_from_ci(TR38901_NLOS_PLE)),
        EquivalenceClaim(
            "inh-nlos-opt1-vs-fi", opt1, PerFrequencyFi(Tr38901Variant.NLOS_OPT1)
        ),
        EquivalenceClaim(
            "inh-nlos-opt1-vs-abg",
            opt1,
            AbgParams(
                alpha=TR38901_NLOS_OPT1_BETA,
                beta=TR38901_NLOS_OPT1_INTERCEPT,
                gamma=TR38901_NLOS_OPT1_FREQ_SLOPE / 10.0,
            ),
        ),
        EquivalenceClaim(
            "cif-b0-vs-ci",
            CifParams(n=2.9, b=0.0, f0=12.0),
            CiParams(n=2.9),
        ),
    )


def verify_all() -> tuple[ClaimReport, ...]:
    """Verify every built-in claim."""
    return tuple(verify_claim(c) for c in builtin_claims())
