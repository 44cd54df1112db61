"""Minimum-mean-square-error parameter estimation for the model families.

Conventions shared by every fit:

* sigma is the population RMS of the residuals (divide by N, not N-1),
  matching how shadow fading spreads are reported alongside the models.
* 95% confidence intervals use the normal 1.96 multiplier on the slope
  parameter's standard error.
* Identifiability is checked structurally first (distinct frequency and
  distance counts) with descriptive parameter names, then numerically via
  a pivoted rank check on the scaled normal equations as a backstop for
  exotic collinearity.

``oracle_fit`` is an independent brute-force route over an explicit
parameter grid; it shares no algebra with the closed forms and exists so
the two can cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .dataset import Dataset, Polarization
from .errors import DataError, UnidentifiableError
from .models import (
    AbgParams,
    CifParams,
    CiParams,
    FiParams,
    ModelParams,
    XpdExtension,
    evaluate,
    fspl_1m,
    params_to_dict,
)

_Z95 = 1.96  # two-sided 95% normal multiplier

# Relative pivot tolerance for the rank check on unit-scaled normal equations.
_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    """A fitted parameter set plus the residual diagnostics of the fit.

    ple_ci95 bounds the slope-like parameter (n for CI/CIF, beta for FI,
    alpha for ABG); it is None where no single slope is defined (XPD fits,
    oracle fits).
    """

    params: ModelParams
    sigma: float
    n_samples: int
    ple_ci95: Optional[tuple[float, float]]
    residuals: np.ndarray

    def to_dict(self) -> dict:
        out = params_to_dict(self.params)
        out["sigma"] = self.sigma
        out["n_samples"] = self.n_samples
        out["ci95"] = list(self.ple_ci95) if self.ple_ci95 is not None else None
        return out


def _rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(values))))


def residual_stats(fit: FitResult) -> dict:
    """Mean, RMS, and max |residual| of a fit, in dB."""
    res = fit.residuals
    return {
        "mean": float(np.mean(res)),
        "sigma": _rms(res),
        "max_abs": float(np.max(np.abs(res))),
    }


def fit_ci(ds: Dataset) -> FitResult:
    """Closed-form CI fit: n minimizes the RMS of PL - FSPL(f, 1 m) against 10 log10(d)."""
    f, d, pl = ds.arrays()
    D = 10.0 * np.log10(d)
    A = pl - fspl_1m(f)
    denom = float(D @ D)
    if denom == 0.0:
        raise UnidentifiableError(
            "n unidentifiable: every sample sits at the 1 m reference distance"
        )
    n_hat = float(A @ D) / denom
    res = A - n_hat * D
    sigma = _rms(res)
    half = _Z95 * sigma / math.sqrt(denom)
    return FitResult(
        params=CiParams(n=n_hat, sigma=sigma),
        sigma=sigma,
        n_samples=len(ds),
        ple_ci95=(n_hat - half, n_hat + half),
        residuals=res,
    )


def fit_fi(ds: Dataset) -> FitResult:
    """Closed-form FI fit: ordinary least squares of PL on 10 log10(d)."""
    _, d, pl = ds.arrays()
    if np.unique(d).size < 2:
        raise UnidentifiableError(
            "beta unidentifiable: dataset spans a single distance"
        )
    D = 10.0 * np.log10(d)
    Dc = D - D.mean()
    sxx = float(Dc @ Dc)
    if sxx == 0.0:
        raise UnidentifiableError(
            "beta unidentifiable: dataset spans a single distance"
        )
    beta = float(Dc @ (pl - pl.mean())) / sxx
    alpha = float(pl.mean()) - beta * float(D.mean())
    res = pl - (alpha + beta * D)
    sigma = _rms(res)
    half = _Z95 * sigma / math.sqrt(sxx)
    return FitResult(
        params=FiParams(alpha=alpha, beta=beta, sigma=sigma),
        sigma=sigma,
        n_samples=len(ds),
        ple_ci95=(beta - half, beta + half),
        residuals=res,
    )


def _rank_check(G: np.ndarray, names: tuple[str, ...]) -> None:
    """Pivoted Cholesky-style rank check on a unit-diagonal Gram matrix.

    Eliminates columns largest-remaining-diagonal first; a pivot below
    _PIVOT_TOL means the named column carries no independent information.
    """
    g = G.copy()
    active = list(range(len(names)))
    while active:
        k = max(active, key=lambda j: g[j, j])
        if g[k, k] < _PIVOT_TOL:
            raise UnidentifiableError(
                f"{names[k]} unidentifiable: design matrix is rank-deficient"
            )
        active.remove(k)
        pivot = g[k, k]
        col = {i: g[i, k] for i in active}
        for i in active:
            for j in active:
                g[i, j] -= col[i] * col[j] / pivot


def _solve_normal(
    X: np.ndarray, y: np.ndarray, names: tuple[str, ...]
) -> tuple[np.ndarray, np.ndarray]:
    """Least squares via column-scaled normal equations.

    Columns are scaled to unit Euclidean norm before forming the Gram
    matrix, the rank check runs at the relative pivot tolerance, and one
    iterative-refinement pass keeps residual orthogonality near machine
    precision. Returns (theta, cov_diag) with cov_diag[j] = [(X'X)^-1]_jj.
    """
    norms = np.sqrt(np.sum(X * X, axis=0))
    dead = np.nonzero(norms == 0.0)[0]
    if dead.size:
        raise UnidentifiableError(
            f"{names[dead[0]]} unidentifiable: design column is identically zero"
        )
    Xs = X / norms
    G = Xs.T @ Xs
    _rank_check(G, names)
    theta_s = np.linalg.solve(G, Xs.T @ y)
    theta_s += np.linalg.solve(G, Xs.T @ (y - Xs @ theta_s))
    cov_diag = np.diag(np.linalg.inv(G)) / np.square(norms)
    return theta_s / norms, cov_diag


def fit_abg(ds: Dataset) -> FitResult:
    """Three-parameter ABG fit over [10 log10(d), 1, 10 log10(f)].

    Needs at least two distinct frequencies (else gamma is unidentifiable)
    and two distinct distances (else alpha is).
    """
    f, d, pl = ds.arrays()
    if np.unique(f).size < 2:
        raise UnidentifiableError(
            "gamma unidentifiable: dataset spans a single frequency"
        )
    if np.unique(d).size < 2:
        raise UnidentifiableError(
            "alpha unidentifiable: dataset spans a single distance"
        )
    D = 10.0 * np.log10(d)
    F = 10.0 * np.log10(f)
    X = np.column_stack([D, np.ones_like(D), F])
    theta, cov_diag = _solve_normal(X, pl, ("alpha", "beta", "gamma"))
    res = pl - X @ theta
    sigma = _rms(res)
    half = _Z95 * sigma * math.sqrt(cov_diag[0])
    alpha, beta, gamma = (float(t) for t in theta)
    return FitResult(
        params=AbgParams(alpha=alpha, beta=beta, gamma=gamma, sigma=sigma),
        sigma=sigma,
        n_samples=len(ds),
        ple_ci95=(alpha - half, alpha + half),
        residuals=res,
    )


def _weighted_mean_frequency(f: np.ndarray) -> float:
    # Count-weighted mean over distinct frequencies == plain sample mean.
    return float(np.mean(f))


def fit_cif(ds: Dataset, pin_f0: Optional[float] = None) -> FitResult:
    """CIF fit: f0 is the count-weighted mean frequency unless pinned.

    With a single distinct frequency the taper is unobservable; the fit
    collapses to fit_ci with b = 0.
    """
    f, d, pl = ds.arrays()
    if pin_f0 is not None:
        if not math.isfinite(pin_f0) or pin_f0 <= 0.0:
            raise DataError("pinned f0 must be positive")
        f0 = float(pin_f0)
    else:
        f0 = _weighted_mean_frequency(f)
    if np.unique(f).size < 2:
        base = fit_ci(ds)
        assert isinstance(base.params, CiParams)
        return FitResult(
            params=CifParams(n=base.params.n, b=0.0, f0=f0, sigma=base.sigma),
            sigma=base.sigma,
            n_samples=base.n_samples,
            ple_ci95=base.ple_ci95,
            residuals=base.residuals,
        )
    D = 10.0 * np.log10(d)
    w = (f - f0) / f0
    A = pl - fspl_1m(f)
    X = np.column_stack([D, D * w])
    theta, cov_diag = _solve_normal(X, A, ("n", "b"))
    n_hat = float(theta[0])
    nb_hat = float(theta[1])
    if n_hat == 0.0:
        raise UnidentifiableError(
            "b unidentifiable: fitted path loss exponent is zero"
        )
    b_hat = nb_hat / n_hat
    res = A - X @ theta
    sigma = _rms(res)
    half = _Z95 * sigma * math.sqrt(cov_diag[0])
    return FitResult(
        params=CifParams(n=n_hat, b=b_hat, f0=f0, sigma=sigma),
        sigma=sigma,
        n_samples=len(ds),
        ple_ci95=(n_hat - half, n_hat + half),
        residuals=res,
    )


def fit_xpd(base: FitResult, cross: Dataset) -> FitResult:
    """Cross-polarization fit: mean offset of V-H path loss above the V-V base fit.

    The base parameters stay frozen; only the constant XPD shifts.
    """
    bad = [s for s in cross.samples if s.polarization is not Polarization.VH]
    if bad:
        raise DataError("cross-polarized dataset contains non-VH samples")
    if isinstance(base.params, XpdExtension):
        raise DataError("base fit is already cross-polarized")
    f, d, pl = cross.arrays()
    diff = pl - np.asarray(evaluate(base.params, f, d), dtype=float)
    xpd = float(np.mean(diff))
    res = diff - xpd
    sigma = _rms(res)
    return FitResult(
        params=XpdExtension(base=base.params, xpd=xpd, sigma=sigma),
        sigma=sigma,
        n_samples=len(cross),
        ple_ci95=None,
        residuals=res,
    )


# --- brute-force oracle ------------------------------------------------------

_FAMILY_AXES = {
    "ci": ("n",),
    "fi": ("alpha", "beta"),
    "abg": ("alpha", "beta", "gamma"),
    "cif": ("n", "b"),
}

# Cap on residual-tensor elements per chunk (~16 MB of float64).
_CHUNK_ELEMS = 2_000_000


def _grid_axis(spec) -> np.ndarray:
    lo, hi, step = (float(v) for v in spec)
    if step <= 0.0 or hi < lo:
        raise ValueError("grid axis must satisfy lo <= hi with step > 0")
    # Scale-aware slack so an endpoint that is an exact multiple of step
    # survives float division (6/0.01 rounds just under 600).
    count = int(math.floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9)) + 1
    return lo + step * np.arange(count)


def oracle_fit(ds: Dataset, family: str, grid: Mapping[str, tuple]) -> FitResult:
    """Exhaustive grid search minimizing residual RMS; no shared algebra
    with the closed-form fits.

    grid maps each family parameter to (lo, hi, step). Ties on sigma break
    to the lowest-index grid point in row-major axis order, so results are
    identical no matter how evaluation is batched.
    """
    if family not in _FAMILY_AXES:
        raise ValueError(f"unknown oracle family '{family}'")
    axis_names = _FAMILY_AXES[family]
    for name in axis_names:
        if name not in grid:
            raise ValueError(f"grid missing parameter '{name}' for family '{family}'")
    axes = [_grid_axis(grid[name]) for name in axis_names]

    f, d, pl = ds.arrays()
    logd = np.log10(d)
    n_pts = len(ds)

    if family == "ci":
        target = pl - fspl_1m(f)
        model = 10.0 * axes[0][:, None] * logd[None, :]
        sig = np.sqrt(np.mean(np.square(target[None, :] - model), axis=-1))
    elif family == "fi":
        a_ax, b_ax = axes
        rows = []
        step = max(1, _CHUNK_ELEMS // max(1, b_ax.size * n_pts))
        for start in range(0, a_ax.size, step):
            a_chunk = a_ax[start : start + step]
            model = (
                a_chunk[:, None, None]
                + 10.0 * b_ax[None, :, None] * logd[None, None, :]
            )
            rows.append(np.sqrt(np.mean(np.square(pl[None, None, :] - model), axis=-1)))
        sig = np.concatenate(rows, axis=0)
    elif family == "abg":
        a_ax, b_ax, g_ax = axes
        logf = np.log10(f)
        rows = []
        step = max(1, _CHUNK_ELEMS // max(1, b_ax.size * g_ax.size * n_pts))
        for start in range(0, a_ax.size, step):
            a_chunk = a_ax[start : start + step]
            model = (
                10.0 * a_chunk[:, None, None, None] * logd[None, None, None, :]
                + b_ax[None, :, None, None]
                + 10.0 * g_ax[None, None, :, None] * logf[None, None, None, :]
            )
            rows.append(
                np.sqrt(np.mean(np.square(pl[None, None, None, :] - model), axis=-1))
            )
        sig = np.concatenate(rows, axis=0)
    else:  # cif
        n_ax, b_ax = axes
        f0 = _weighted_mean_frequency(f)
        w = (f - f0) / f0
        target = pl - fspl_1m(f)
        rows = []
        step = max(1, _CHUNK_ELEMS // max(1, b_ax.size * n_pts))
        for start in range(0, n_ax.size, step):
            n_chunk = n_ax[start : start + step]
            slope = n_chunk[:, None, None] * (1.0 + b_ax[None, :, None] * w[None, None, :])
            model = 10.0 * slope * logd[None, None, :]
            rows.append(np.sqrt(np.mean(np.square(target[None, None, :] - model), axis=-1)))
        sig = np.concatenate(rows, axis=0)

    flat_best = int(np.argmin(sig))  # first minimum == lowest index
    best_idx = np.unravel_index(flat_best, sig.shape)
    best = [float(axes[i][j]) for i, j in enumerate(best_idx)]
    sigma = float(sig[best_idx])

    if family == "ci":
        params: ModelParams = CiParams(n=best[0], sigma=sigma)
    elif family == "fi":
        params = FiParams(alpha=best[0], beta=best[1], sigma=sigma)
    elif family == "abg":
        params = AbgParams(alpha=best[0], beta=best[1], gamma=best[2], sigma=sigma)
    else:
        params = CifParams(n=best[0], b=best[1], f0=f0, sigma=sigma)

    res = pl - np.asarray(evaluate(params, f, d), dtype=float)
    return FitResult(
        params=params,
        sigma=sigma,
        n_samples=n_pts,
        ple_ci95=None,
        residuals=res,
    )
