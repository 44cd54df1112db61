"""Published indoor-office parameter tables as a typed, immutable registry.

Entries are transcribed exactly as printed (including the occasional odd
sigma ordering between variants); nothing is recomputed or smoothed. The
registry is keyed by model family, band, environment, and polarization,
e.g. ``ci:single_142:los:vv``. Sources name the table each value came from
(``table1`` .. ``table4``).

Coverage per source:

* table1 — single-frequency V-V results at 6.75, 16.95, 28, 73, 142 GHz
  (CI and FI per environment).
* table2 — 7-24 GHz multi-frequency results (CI/CIF/ABG plus X variants).
* table3 — 0.5-100 GHz multi-frequency results (same six families).
* table4 — 0.5-150 GHz multi-frequency results (CI/CIF/ABG only; no X
  variants were published for that span).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .dataset import Environment, Polarization, _parse_env, _parse_pol
from .errors import DataError
from .models import (
    AbgParams,
    CifParams,
    CiParams,
    FiParams,
    XpdExtension,
    model_token,
    params_to_dict,
)

RegistryParams = Union[CiParams, FiParams, AbgParams, CifParams, XpdExtension]


class Band(str, Enum):
    SINGLE_6_75 = "single_6_75"
    SINGLE_16_95 = "single_16_95"
    SINGLE_28 = "single_28"
    SINGLE_73 = "single_73"
    SINGLE_142 = "single_142"
    FR3_7_24 = "fr3_7_24"
    WIDE_0_5_100 = "wide_0_5_100"
    WIDE_0_5_150 = "wide_0_5_150"


BAND_LABELS = {
    Band.SINGLE_6_75: "6.75 GHz",
    Band.SINGLE_16_95: "16.95 GHz",
    Band.SINGLE_28: "28 GHz",
    Band.SINGLE_73: "73 GHz",
    Band.SINGLE_142: "142 GHz",
    Band.FR3_7_24: "7-24 GHz",
    Band.WIDE_0_5_100: "0.5-100 GHz",
    Band.WIDE_0_5_150: "0.5-150 GHz",
}


def _parse_band(token) -> Band:
    if isinstance(token, Band):
        return token
    try:
        return Band(str(token).lower())
    except ValueError:
        raise DataError(f"unknown band '{token}'") from None


@dataclass(frozen=True)
class PublishedEntry:
    """One table cell group: a parameter set with its shadow fading sigma."""

    model: str
    band: Band
    environment: Environment
    polarization: Polarization
    params: RegistryParams
    sigma: float
    source: str


def _entry(band, env, pol, params, source) -> PublishedEntry:
    return PublishedEntry(
        model=model_token(params),
        band=band,
        environment=env,
        polarization=pol,
        params=params,
        sigma=params.sigma,
        source=source,
    )


_LOS = Environment.LOS
_NLOS = Environment.NLOS
_VV = Polarization.VV
_VH = Polarization.VH


def _table1() -> list[PublishedEntry]:
    # (band, env, CI n, CI sigma, FI alpha, FI beta, FI sigma)
    rows = (
        (Band.SINGLE_6_75, _LOS, 1.3, 3.5, 43.4, 1.7, 3.4),
        (Band.SINGLE_6_75, _NLOS, 2.7, 9.2, 35.2, 3.6, 9.0),
        (Band.SINGLE_16_95, _LOS, 1.3, 2.7, 50.9, 1.7, 2.4),
        (Band.SINGLE_16_95, _NLOS, 3.1, 8.1, 61.0, 2.8, 8.1),
        (Band.SINGLE_28, _LOS, 1.1, 1.8, 60.6, 1.2, 1.8),
        (Band.SINGLE_28, _NLOS, 2.7, 9.5, 51.3, 3.5, 9.2),
        (Band.SINGLE_73, _LOS, 1.3, 2.3, 78.1, 0.5, 1.4),
        (Band.SINGLE_73, _NLOS, 3.2, 11.3, 76.2, 2.7, 11.2),
        (Band.SINGLE_142, _LOS, 1.8, 3.0, 82.8, 1.1, 2.3),
        (Band.SINGLE_142, _NLOS, 2.7, 6.6, 98.9, 0.8, 4.6),
    )
    out = []
    for band, env, ci_n, ci_s, fi_a, fi_b, fi_s in rows:
        out.append(_entry(band, env, _VV, CiParams(ci_n, ci_s), "table1"))
        out.append(_entry(band, env, _VV, FiParams(fi_a, fi_b, fi_s), "table1"))
    return out


def _multifreq(
    band: Band,
    source: str,
    env: Environment,
    ci: tuple,
    cix: Optional[tuple],
    cif: tuple,
    cifx: Optional[tuple],
    abg: tuple,
    abgx: Optional[tuple],
) -> list[PublishedEntry]:
    ci_n, ci_s = ci
    cif_n, cif_b, cif_f0, cif_s = cif
    abg_a, abg_b, abg_g, abg_s = abg
    out = [_entry(band, env, _VV, CiParams(ci_n, ci_s), source)]
    if cix is not None:
        xpd, s = cix
        out.append(
            _entry(band, env, _VH, XpdExtension(CiParams(ci_n), xpd, s), source)
        )
    out.append(_entry(band, env, _VV, CifParams(cif_n, cif_b, cif_f0, cif_s), source))
    if cifx is not None:
        xpd, s = cifx
        out.append(
            _entry(
                band,
                env,
                _VH,
                XpdExtension(CifParams(cif_n, cif_b, cif_f0), xpd, s),
                source,
            )
        )
    out.append(_entry(band, env, _VV, AbgParams(abg_a, abg_b, abg_g, abg_s), source))
    if abgx is not None:
        xpd, s = abgx
        out.append(
            _entry(
                band,
                env,
                _VH,
                XpdExtension(AbgParams(abg_a, abg_b, abg_g), xpd, s),
                source,
            )
        )
    return out


def _build_entries() -> tuple[PublishedEntry, ...]:
    entries = _table1()
    # 7-24 GHz
    entries += _multifreq(
        Band.FR3_7_24,
        "table2",
        _LOS,
        ci=(1.3, 3.1),
        cix=(18.5, 6.9),
        cif=(1.3, 0.0, 12.0, 3.1),
        cifx=(16.9, 6.7),
        abg=(1.7, 28.2, 1.9, 2.9),
        abgx=(17.6, 6.6),
    )
    entries += _multifreq(
        Band.FR3_7_24,
        "table2",
        _NLOS,
        ci=(2.9, 9.1),
        cix=(15.8, 11.9),
        cif=(2.9, 0.1, 12.0, 8.7),
        cifx=(21.8, 12.0),
        abg=(3.2, 12.9, 3.4, 8.6),
        abgx=(16.2, 10.6),
    )
    # 0.5-100 GHz
    entries += _multifreq(
        Band.WIDE_0_5_100,
        "table3",
        _LOS,
        ci=(1.3, 2.8),
        cix=(18.0, 6.2),
        cif=(1.3, 0.0, 35.0, 2.8),
        cifx=(18.0, 6.2),
        abg=(1.4, 29.5, 2.1, 2.7),
        abgx=(18.4, 6.0),
    )
    entries += _multifreq(
        Band.WIDE_0_5_100,
        "table3",
        _NLOS,
        ci=(2.9, 10.5),
        cix=(13.8, 10.8),
        cif=(3.0, 0.1, 40.0, 10.2),
        cifx=(16.2, 10.9),
        abg=(3.4, 12.9, 2.9, 10.1),
        abgx=(13.9, 10.3),
    )
    # 0.5-150 GHz (no X variants published)
    entries += _multifreq(
        Band.WIDE_0_5_150,
        "table4",
        _LOS,
        ci=(1.4, 3.5),
        cix=None,
        cif=(1.4, 0.1, 57.0, 3.0),
        cifx=None,
        abg=(1.5, 24.3, 2.4, 3.1),
        abgx=None,
    )
    entries += _multifreq(
        Band.WIDE_0_5_150,
        "table4",
        _NLOS,
        ci=(2.9, 10.7),
        cix=None,
        cif=(2.9, 0.0, 51.0, 10.2),
        cifx=None,
        abg=(3.1, 23.0, 2.5, 10.0),
        abgx=None,
    )
    return tuple(entries)


ENTRIES: tuple[PublishedEntry, ...] = _build_entries()


def entry_key(entry: PublishedEntry) -> str:
    return ":".join(
        (
            entry.model,
            entry.band.value,
            entry.environment.value.lower(),
            entry.polarization.value.lower(),
        )
    )


def parse_registry_key(key: str) -> tuple[str, Band, Environment, Polarization]:
    parts = key.split(":")
    if len(parts) != 4:
        raise DataError("registry key must be model:band:env:pol")
    model, band, env, pol = parts
    return model.lower(), _parse_band(band), _parse_env(env), _parse_pol(pol)


def lookup(model, band, environment, polarization) -> PublishedEntry:
    """Exact lookup; absence (an unpublished combination) is an input error."""
    model_t = str(model).lower()
    band_v = _parse_band(band)
    env_v = _parse_env(environment)
    pol_v = _parse_pol(polarization)
    for entry in ENTRIES:
        if (
            entry.model == model_t
            and entry.band is band_v
            and entry.environment is env_v
            and entry.polarization is pol_v
        ):
            return entry
    raise DataError(
        "no published entry for "
        f"{model_t}:{band_v.value}:{env_v.value.lower()}:{pol_v.value.lower()}"
    )


def list_entries(
    model=None, band=None, environment=None, polarization=None, source=None
) -> tuple[PublishedEntry, ...]:
    """All matching entries in table order."""
    model_t = str(model).lower() if model is not None else None
    band_v = _parse_band(band) if band is not None else None
    env_v = _parse_env(environment) if environment is not None else None
    pol_v = _parse_pol(polarization) if polarization is not None else None
    source_t = str(source).lower() if source is not None else None
    return tuple(
        e
        for e in ENTRIES
        if (model_t is None or e.model == model_t)
        and (band_v is None or e.band is band_v)
        and (env_v is None or e.environment is env_v)
        and (pol_v is None or e.polarization is pol_v)
        and (source_t is None or e.source == source_t)
    )


def entry_to_dict(entry: PublishedEntry) -> dict:
    """Flat export row: serialized params plus registry coordinates."""
    out = params_to_dict(entry.params)
    out["band"] = entry.band.value
    out["env"] = entry.environment.value.lower()
    out["pol"] = entry.polarization.value.lower()
    out["source"] = entry.source
    return out


def registry_checksum() -> str:
    """SHA-256 of the canonical JSON export; pins the transcription."""
    payload = json.dumps(
        [entry_to_dict(e) for e in ENTRIES], sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
