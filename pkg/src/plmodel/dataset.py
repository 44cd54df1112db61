"""Measurement datasets: CSV ingestion, filtering, and synthesis.

The interchange format is a six-column CSV with header
``freq_ghz,distance_m,env,pol,pl_db,campaign``. Numbers use '.' as the
decimal separator; env and pol tokens are case-insensitive; campaign may be
empty. Floats are written back with repr() so a load/write/load cycle is
lossless bit for bit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import DataError
from .models import MIN_DISTANCE_M, AnyModel, evaluate

CSV_HEADER = ("freq_ghz", "distance_m", "env", "pol", "pl_db", "campaign")


class Environment(str, Enum):
    LOS = "LOS"
    NLOS = "NLOS"


class Polarization(str, Enum):
    VV = "VV"
    VH = "VH"


def _parse_env(token) -> Environment:
    if isinstance(token, Environment):
        return token
    try:
        return Environment(str(token).upper())
    except ValueError:
        raise DataError(f"unknown environment '{token}'") from None


def _parse_pol(token) -> Polarization:
    if isinstance(token, Polarization):
        return token
    try:
        return Polarization(str(token).upper())
    except ValueError:
        raise DataError(f"unknown polarization '{token}'") from None


@dataclass(frozen=True)
class PathLossSample:
    """One measured (or synthesized) link.

    frequency in GHz (> 0), distance in meters (>= 1 m reference),
    path_loss in dB (finite).
    """

    frequency: float
    distance: float
    environment: Environment
    polarization: Polarization
    path_loss: float
    campaign_id: Optional[str] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.frequency) or self.frequency <= 0.0:
            raise ValueError("frequency must be positive")
        if not math.isfinite(self.distance) or self.distance < MIN_DISTANCE_M:
            raise ValueError("distance below 1 m reference")
        if not math.isfinite(self.path_loss):
            raise ValueError("path loss must be finite")


@dataclass(frozen=True)
class CampaignDescriptor:
    """Summary of one measurement campaign (no per-sample data)."""

    frequency: float
    site: str
    n_los_pairs: int
    n_nlos_pairs: int
    d_min: float
    d_max: float
    tx_height: float
    rx_height: float

    def __post_init__(self) -> None:
        if self.frequency <= 0.0:
            raise ValueError("frequency must be positive")
        if self.n_los_pairs < 0 or self.n_nlos_pairs < 0:
            raise ValueError("pair counts must be non-negative")
        if not (0.0 < self.d_min < self.d_max):
            raise ValueError("need 0 < d_min < d_max")
        if self.tx_height <= 0.0 or self.rx_height <= 0.0:
            raise ValueError("antenna heights must be positive")


# Bundled campaign summaries for the indoor office measurements backing the
# published parameter tables.
CAMPAIGNS: tuple[CampaignDescriptor, ...] = (
    CampaignDescriptor(6.75, "370 Jay Street, Brooklyn NY", 7, 13, 13.0, 97.0, 2.4, 1.5),
    CampaignDescriptor(16.95, "370 Jay Street, Brooklyn NY", 7, 13, 13.0, 97.0, 2.4, 1.5),
    CampaignDescriptor(28.0, "2 MetroTech Center, Brooklyn NY", 10, 38, 3.9, 45.9, 2.5, 1.5),
    CampaignDescriptor(73.0, "2 MetroTech Center, Brooklyn NY", 10, 38, 3.9, 45.9, 2.5, 1.5),
    CampaignDescriptor(142.0, "2 MetroTech Center, Brooklyn NY", 9, 12, 3.9, 39.2, 2.5, 1.5),
)


@dataclass(frozen=True)
class Dataset:
    """Immutable collection of samples plus optional campaign metadata."""

    samples: tuple[PathLossSample, ...]
    campaigns: tuple[CampaignDescriptor, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "campaigns", tuple(self.campaigns))
        if not self.samples:
            raise ValueError("dataset is empty")

    def __len__(self) -> int:
        return len(self.samples)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(frequency, distance, path_loss) as float arrays, sample order."""
        f = np.array([s.frequency for s in self.samples], dtype=float)
        d = np.array([s.distance for s in self.samples], dtype=float)
        pl = np.array([s.path_loss for s in self.samples], dtype=float)
        return f, d, pl


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic dataset.

    Distances are drawn log-uniformly over distance_range per frequency;
    shadow fading is i.i.d. Gaussian with the given sigma (dB). The recipe's
    env/pol labels are stamped onto every sample so the output is a valid
    CSV round-trip citizen.
    """

    generating_model: AnyModel
    frequencies: tuple[float, ...]
    distance_range: tuple[float, float]
    samples_per_frequency: int
    sigma: float
    seed: int
    environment: Environment = Environment.LOS
    polarization: Polarization = Polarization.VV

    def __post_init__(self) -> None:
        object.__setattr__(self, "frequencies", tuple(self.frequencies))
        object.__setattr__(self, "distance_range", tuple(self.distance_range))
        object.__setattr__(self, "environment", _parse_env(self.environment))
        object.__setattr__(self, "polarization", _parse_pol(self.polarization))
        if not self.frequencies:
            raise ValueError("need at least one frequency")
        if any(not math.isfinite(f) or f <= 0.0 for f in self.frequencies):
            raise ValueError("frequency must be positive")
        lo, hi = self.distance_range
        if not (MIN_DISTANCE_M <= lo <= hi) or not math.isfinite(hi):
            raise ValueError("distance range must satisfy 1 <= d_min <= d_max")
        if self.samples_per_frequency < 1:
            raise ValueError("samples_per_frequency must be at least 1")
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise ValueError("sigma must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def _parse_float(token: str, column: str, row: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"bad {column} value '{token}', row {row}") from None
    if not math.isfinite(value):
        raise DataError(f"bad {column} value '{token}', row {row}")
    return value


def parse_csv(text: str) -> Dataset:
    """Parse CSV text into a Dataset; row numbers in errors count the header as row 1."""
    lines = text.splitlines()
    if not lines:
        raise DataError("empty input")
    reader = csv.reader(lines)
    rows = list(reader)
    header = tuple(cell.strip().lower() for cell in rows[0])
    if header != CSV_HEADER:
        missing = [c for c in CSV_HEADER if c not in header]
        extra = [c for c in header if c not in CSV_HEADER]
        parts = []
        if missing:
            parts.append("missing columns: " + ", ".join(missing))
        if extra:
            parts.append("unexpected columns: " + ", ".join(extra))
        if not parts:
            parts.append("columns out of order")
        raise DataError("bad header (" + "; ".join(parts) + ")")

    samples = []
    problems = []
    for i, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != len(CSV_HEADER):
            problems.append(f"expected {len(CSV_HEADER)} fields, got {len(row)}, row {i}")
            continue
        try:
            freq = _parse_float(row[0].strip(), "freq_ghz", i)
            dist = _parse_float(row[1].strip(), "distance_m", i)
            pl = _parse_float(row[4].strip(), "pl_db", i)
            env = _parse_env(row[2].strip())
            pol = _parse_pol(row[3].strip())
            campaign = row[5].strip() or None
            samples.append(PathLossSample(freq, dist, env, pol, pl, campaign))
        except (DataError, ValueError) as exc:
            msg = str(exc)
            if f"row {i}" not in msg:
                msg = f"{msg}, row {i}"
            problems.append(msg)
    if problems:
        raise DataError("; ".join(problems))
    if not samples:
        raise DataError("no samples")
    return Dataset(tuple(samples))


def load_csv(path) -> Dataset:
    """Read a measurement CSV file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_csv(fh.read())


def dumps_csv(ds: Dataset) -> str:
    """Serialize with repr() floats so reloading reproduces samples exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in ds.samples:
        writer.writerow(
            [
                repr(s.frequency),
                repr(s.distance),
                s.environment.value,
                s.polarization.value,
                repr(s.path_loss),
                s.campaign_id or "",
            ]
        )
    return buf.getvalue()


def write_csv(ds: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_csv(ds))


def filter_dataset(
    ds: Dataset,
    env: Environment | str | None = None,
    pol: Polarization | str | None = None,
    band: Sequence[float] | None = None,
) -> Dataset:
    """Subset by environment, polarization, and/or inclusive frequency band.

    Criteria are independent, so filtering is idempotent and order does not
    matter. An empty result is an error, not an empty dataset.
    """
    env_v = _parse_env(env) if env is not None else None
    pol_v = _parse_pol(pol) if pol is not None else None
    if band is not None:
        lo, hi = float(band[0]), float(band[1])
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise DataError("band must be [low, high] with low <= high")
    kept = tuple(
        s
        for s in ds.samples
        if (env_v is None or s.environment is env_v)
        and (pol_v is None or s.polarization is pol_v)
        and (band is None or lo <= s.frequency <= hi)
    )
    if not kept:
        raise DataError("no samples match filter")
    return Dataset(kept, ds.campaigns)


def synthesize(spec: SynthSpec) -> Dataset:
    """Draw a synthetic dataset from the generating model.

    Deterministic per seed (PCG64 via numpy's default_rng, whose streams are
    stable across platforms). With sigma == 0 the noise draw is skipped so
    samples sit exactly on the model curve.
    """
    rng = np.random.default_rng(spec.seed)
    lo = math.log10(spec.distance_range[0])
    hi = math.log10(spec.distance_range[1])
    count = spec.samples_per_frequency
    samples = []
    for f in spec.frequencies:
        d = 10.0 ** rng.uniform(lo, hi, count)
        d = np.maximum(d, MIN_DISTANCE_M)  # guard rounding at the 1 m edge
        pl = np.asarray(evaluate(spec.generating_model, f, d), dtype=float)
        if spec.sigma > 0.0:
            pl = pl + rng.normal(0.0, spec.sigma, count)
        for j in range(count):
            samples.append(
                PathLossSample(
                    frequency=f,
                    distance=float(d[j]),
                    environment=spec.environment,
                    polarization=spec.polarization,
                    path_loss=float(pl[j]),
                    campaign_id=None,
                )
            )
    return Dataset(tuple(samples))
