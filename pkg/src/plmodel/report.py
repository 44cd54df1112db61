"""Deterministic, diff-stable report rendering.

Two report sources: the published-parameter registry (filtered by key
fragments) and a fit result (optionally expanded into per-frequency curve
series). Three formats: ``md`` for humans (registry values at the tables'
1-decimal printing, fit parameters at 2 decimals, sigma at 1), ``csv`` and
``json`` for machines (full precision; JSON key-sorted).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional, Sequence

import numpy as np

from .dataset import Dataset
from .errors import DataError
from .models import FiParams, evaluate, params_from_dict
from .registry import (
    BAND_LABELS,
    Band,
    ENTRIES,
    entry_to_dict,
    list_entries,
)

FORMATS = ("md", "csv", "json")

# Wide export layout: one column per possible parameter, blank where a
# family has no such parameter.
REGISTRY_COLUMNS = (
    "model",
    "band",
    "env",
    "pol",
    "n",
    "b",
    "f0",
    "alpha",
    "beta",
    "gamma",
    "xpd",
    "sigma",
    "source",
)

_PARAM_ORDER = ("n", "b", "f0", "alpha", "beta", "gamma", "xpd")

CURVE_DISTANCES = tuple(float(x) for x in range(1, 101))


def _check_format(fmt: str) -> str:
    fmt = str(fmt).lower()
    if fmt not in FORMATS:
        raise DataError(f"unknown report format '{fmt}' (expected md, csv, or json)")
    return fmt


def _fragment_filters(expr: Optional[str]) -> dict:
    """Parse a registry filter like 'table4' or 'ci:fr3_7_24:nlos:vv'.

    Each fragment must name a model family, band, environment, polarization,
    or source; fragments combine with AND.
    """
    filters: dict = {}
    if not expr:
        return filters
    models = {e.model for e in ENTRIES}
    sources = {e.source for e in ENTRIES}
    bands = {b.value for b in Band}
    for frag in (p for chunk in expr.split(":") for p in chunk.split()):
        token = frag.strip().lower()
        if not token:
            continue
        if token in models:
            filters["model"] = token
        elif token in bands:
            filters["band"] = token
        elif token in ("los", "nlos"):
            filters["environment"] = token
        elif token in ("vv", "vh"):
            filters["polarization"] = token
        elif token in sources:
            filters["source"] = token
        else:
            raise DataError(f"unknown registry filter '{frag}'")
    return filters


def _registry_rows(expr: Optional[str]) -> list[dict]:
    entries = list_entries(**_fragment_filters(expr))
    if not entries:
        raise DataError(f"no registry entries match '{expr}'")
    rows = []
    for entry in entries:
        flat = entry_to_dict(entry)
        rows.append({col: flat.get(col, "") for col in REGISTRY_COLUMNS})
    return rows


def _md_table(columns: Sequence[str], rows: list[dict], fmt_cell) -> str:
    lines = ["| " + " | ".join(columns) + " |"]
    lines.append("| " + " | ".join("---" for _ in columns) + " |")
    for row in rows:
        lines.append("| " + " | ".join(fmt_cell(c, row[c]) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def _csv_table(columns: Sequence[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [repr(v) if isinstance(v, float) else str(v) for v in (row[c] for c in columns)]
        )
    return buf.getvalue()


def registry_report(expr: Optional[str], fmt: str = "md") -> str:
    """Render matching registry entries; mirrors the published table layout."""
    fmt = _check_format(fmt)
    rows = _registry_rows(expr)
    if fmt == "json":
        return json.dumps({"entries": rows}, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv_table(REGISTRY_COLUMNS, rows)

    def cell(col: str, value) -> str:
        if value == "":
            return "-"
        if col == "band":
            return BAND_LABELS[Band(value)]
        if isinstance(value, float):
            return f"{value:.1f}"  # tables print one decimal
        return str(value)

    return _md_table(REGISTRY_COLUMNS, rows, cell)


def _fit_rows(fit: dict) -> list[tuple[str, str]]:
    rows = [("model", str(fit["model"]))]
    for key in _PARAM_ORDER:
        if key in fit and fit[key] is not None:
            if key == "f0":
                rows.append(("f0", f"{fit['f0']:.2f} (rounded {round(fit['f0']):.1f} GHz)"))
            else:
                rows.append((key, f"{fit[key]:.2f}"))
    if fit.get("sigma") is not None:
        rows.append(("sigma", f"{fit['sigma']:.1f} dB"))
    if fit.get("n_samples") is not None:
        rows.append(("n_samples", str(fit["n_samples"])))
    if fit.get("ci95"):
        lo, hi = fit["ci95"]
        rows.append(("ci95", f"[{lo:.2f}, {hi:.2f}]"))
    return rows


def fit_report(fit: dict, fmt: str = "md") -> str:
    """Render a serialized fit result."""
    fmt = _check_format(fmt)
    if fmt == "json":
        return json.dumps(fit, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        columns = [k for k in fit if k != "ci95"] + ["ci95_low", "ci95_high"]
        row = {k: fit[k] for k in fit if k != "ci95"}
        ci = fit.get("ci95")
        row["ci95_low"] = ci[0] if ci else ""
        row["ci95_high"] = ci[1] if ci else ""
        return _csv_table(columns, [row])
    lines = [f"{name}: {value}" for name, value in _fit_rows(fit)]
    return "\n".join(lines) + "\n"


def series_data(
    fit: dict,
    dataset: Optional[Dataset] = None,
    frequencies: Optional[Sequence[float]] = None,
) -> list[dict]:
    """Per-frequency curve samples (d = 1..100 m) plus measured points.

    Frequencies come from the explicit list, else from the dataset, else the
    request is unanswerable. FI curves ignore frequency, so an FI fit yields
    a single series.
    """
    params = params_from_dict(fit)
    if frequencies:
        freqs: list[Optional[float]] = sorted(float(f) for f in set(frequencies))
    elif dataset is not None:
        freqs = sorted({s.frequency for s in dataset.samples})
    else:
        raise DataError("series output needs --freqs or an input dataset")
    if isinstance(params, FiParams):
        freqs = [None]

    d_curve = np.asarray(CURVE_DISTANCES)
    series = []
    for f in freqs:
        curve_pl = np.asarray(evaluate(params, f, d_curve), dtype=float)
        points = []
        if dataset is not None:
            points = [
                [s.distance, s.path_loss]
                for s in dataset.samples
                if f is None or s.frequency == f
            ]
        series.append(
            {
                "freq_ghz": f,
                "curve": [[float(d), float(p)] for d, p in zip(d_curve, curve_pl)],
                "points": points,
            }
        )
    return series


def series_report(series: list[dict], fmt: str = "md") -> str:
    """Render series rows (kind, freq_ghz, distance_m, path_loss_db)."""
    fmt = _check_format(fmt)
    if fmt == "json":
        return json.dumps({"series": series}, sort_keys=True, indent=2) + "\n"
    rows = []
    for block in series:
        f = block["freq_ghz"]
        for d, p in block["curve"]:
            rows.append({"kind": "curve", "freq_ghz": "" if f is None else f, "distance_m": d, "path_loss_db": p})
        for d, p in block["points"]:
            rows.append({"kind": "point", "freq_ghz": "" if f is None else f, "distance_m": d, "path_loss_db": p})
    columns = ("kind", "freq_ghz", "distance_m", "path_loss_db")
    if fmt == "csv":
        return _csv_table(columns, rows)

    def cell(col: str, value) -> str:
        if value == "":
            return "-"
        if isinstance(value, float):
            return f"{value:.2f}"
        return str(value)

    return _md_table(columns, rows, cell)
