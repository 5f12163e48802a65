"""Observable extraction: fringe visibility, Gaussian falloff fits, CIs.

The Gaussian visibility-falloff fit V(d) = A exp(-(d - c)^2 / (2 s^2)) uses
a damped Gauss-Newton (Levenberg-style) loop with the analytic Jacobian;
``half_width`` in a report is the fitted s, which is where the curve drops
to 1/sqrt(e) of its peak.  Confidence intervals come from residual-
resampling bootstrap.  Fits are unweighted: the source scans carry roughly
uniform noise per point and no weighting scheme is implied by the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import FitFailureError, UndefinedVisibilityError
from .interference import ScanResult

_Z95 = 1.959964
_MAX_ITER = 200
_STEP_TOL = 1e-12


@dataclass(frozen=True)
class FitReport:
    """Fitted curve parameters with 95% bootstrap intervals."""

    amplitude: float
    half_width: float
    center: float
    rss: float
    ci_amplitude: tuple[float, float]
    ci_half_width: tuple[float, float]
    ci_center: tuple[float, float]

    def __post_init__(self):
        if not self.half_width > 0.0:
            raise ValueError("half_width must be > 0")
        if self.rss < 0.0:
            raise ValueError("rss must be >= 0")
        for value, (lo, hi) in ((self.amplitude, self.ci_amplitude),
                                (self.half_width, self.ci_half_width),
                                (self.center, self.ci_center)):
            if not lo <= value <= hi:
                raise ValueError("confidence interval must contain estimate")


def fit_fringe_sinusoid(phases: np.ndarray, counts: np.ndarray):
    """Poisson-weighted linear fit counts ~ a0 + a1 cos(phi) + b1 sin(phi).

    Returns ((a0, a1, b1), covariance); the weights are 1/max(count, 1),
    matching the Poisson variance of each point.
    """
    design = np.column_stack([np.ones_like(phases),
                              np.cos(phases), np.sin(phases)])
    weights = 1.0 / np.maximum(counts, 1.0)
    xtwx = design.T @ (design * weights[:, None])
    xtwy = design.T @ (weights * counts)
    try:
        cov = np.linalg.inv(xtwx)
    except np.linalg.LinAlgError as exc:
        raise UndefinedVisibilityError(
            "degenerate phase grid: sinusoid fit is singular") from exc
    beta = cov @ xtwy
    return (float(beta[0]), float(beta[1]), float(beta[2])), cov


def extract_visibility(scan: ScanResult) -> float:
    """Fringe visibility (S_max - S_min) / (S_max + S_min) of a scan.

    Counts scans (Poisson-noisy, abscissa = phase in radians covering at
    least one full fringe) take the extrema from a fitted sinusoid, which
    avoids the upward bias of raw order statistics under noise.  Rate and
    other noiseless scans use the exact extrema of the sampled values.
    """
    values = scan.values
    if not np.any(values > 0.0):
        raise UndefinedVisibilityError("visibility undefined: all values zero")
    if scan.value_kind == "counts":
        (a0, a1, b1), _ = fit_fringe_sinusoid(scan.abscissae, values)
        if a0 <= 0.0:
            raise UndefinedVisibilityError(
                "visibility undefined: nonpositive fitted mean")
        return min(1.0, max(0.0, math.hypot(a1, b1) / a0))
    s_max = float(values.max())
    s_min = float(values.min())
    return (s_max - s_min) / (s_max + s_min)


def _gauss_residuals(params, d, v):
    amp, center, sigma = params
    u = (d - center) / sigma
    e = np.exp(-0.5 * u * u)
    r = amp * e - v
    jac = np.column_stack([e,
                           amp * e * u / sigma,
                           amp * e * u * u / sigma])
    return r, jac


def _levenberg(residual_jac, p0, span):
    """Damped Gauss-Newton for small dense problems."""
    p = np.array(p0, dtype=np.float64)
    r, jac = residual_jac(p)
    rss = float(r @ r)
    lam = 1e-3
    for _ in range(_MAX_ITER):
        jtj = jac.T @ jac
        grad = jac.T @ r
        diag = np.diag(jtj).copy()
        diag[diag <= 0.0] = 1.0
        step = None
        while lam < 1e14:
            try:
                step = np.linalg.solve(jtj + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            p_try = p + step
            r_try, jac_try = residual_jac(p_try)
            rss_try = float(r_try @ r_try)
            if rss_try <= rss:
                p, r, jac, rss = p_try, r_try, jac_try, rss_try
                lam = max(lam / 3.0, 1e-12)
                break
            lam *= 10.0
        else:
            raise FitFailureError(
                f"damping exhausted at rss={rss:g}", last_params=tuple(p))
        if np.linalg.norm(step) <= _STEP_TOL * (np.linalg.norm(p) + span):
            return p, rss
    raise FitFailureError(
        f"no convergence in {_MAX_ITER} iterations (rss={rss:g})",
        last_params=tuple(p))


def _bootstrap_ci(estimates: np.ndarray, point: float) -> tuple[float, float]:
    lo, hi = np.percentile(estimates, [2.5, 97.5])
    return min(float(lo), point), max(float(hi), point)


def fit_gaussian_falloff(points: Sequence[tuple[float, float]],
                         n_bootstrap: int = 1000,
                         seed: int = 0) -> FitReport:
    """Least-squares Gaussian fit of visibility-vs-displacement data.

    Initial guess: A = max value, c = its displacement (smallest
    displacement on ties), s = half the displacement span.  Raises
    FitFailureError for degenerate (flat) data or non-convergence.
    """
    pts = sorted((float(d), float(v)) for d, v in points)
    if len(pts) < 4:
        raise ValueError("need at least 4 points")
    d = np.array([p[0] for p in pts])
    v = np.array([p[1] for p in pts])
    span = float(d[-1] - d[0])
    if span == 0.0:
        raise ValueError("displacements must not all be equal")
    if float(np.ptp(v)) == 0.0:
        raise FitFailureError(
            "degenerate data: all values equal (half-width unbounded)")

    p0 = (float(v.max()), float(d[np.argmax(v)]), 0.5 * span)

    def rj(params):
        return _gauss_residuals(params, d, v)

    p_hat, rss = _levenberg(rj, p0, span)
    amp, center, sigma = float(p_hat[0]), float(p_hat[1]), abs(float(p_hat[2]))

    fitted = amp * np.exp(-0.5 * ((d - center) / sigma) ** 2)
    residuals = v - fitted
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    samples = []
    failures = 0
    for _ in range(n_bootstrap):
        v_b = fitted + rng.choice(residuals, size=len(residuals))

        def rj_b(params, vb=v_b):
            return _gauss_residuals(params, d, vb)

        try:
            p_b, _ = _levenberg(rj_b, (amp, center, sigma), span)
            samples.append((p_b[0], p_b[1], abs(p_b[2])))
        except FitFailureError:
            failures += 1
    if failures > n_bootstrap // 5:
        raise FitFailureError(
            f"bootstrap unstable: {failures}/{n_bootstrap} refits failed",
            last_params=(amp, center, sigma))
    samples = np.array(samples)
    return FitReport(
        amplitude=amp, half_width=sigma, center=center, rss=float(rss),
        ci_amplitude=_bootstrap_ci(samples[:, 0], amp),
        ci_half_width=_bootstrap_ci(samples[:, 2], sigma),
        ci_center=_bootstrap_ci(samples[:, 1], center))


def fit_distinguishability_curve(points: Sequence[tuple[float, float]],
                                 reference: FitReport,
                                 n_bootstrap: int = 1000,
                                 seed: int = 0) -> FitReport:
    """Fit D(d) = sqrt(1 - exp(-(d - c)^2 / s_ref^2)) with s_ref fixed.

    ``s_ref`` is the half-width of the reference visibility fit; only the
    center is free.  The model has a kink at its zero, so the single free
    parameter is located by a bounded scalar search on the residual sum of
    squares rather than a derivative-based step.
    """
    pts = sorted((float(x), float(y)) for x, y in points)
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    d = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    s_ref = reference.half_width

    def model(center):
        u = (d - center) / s_ref
        return np.sqrt(-np.expm1(-u * u))

    def rss_of(center, target=y):
        r = model(center) - target
        return float(r @ r)

    lo_b, hi_b = float(d[0] - s_ref), float(d[-1] + s_ref)

    def solve(target):
        res = minimize_scalar(lambda c: rss_of(c, target),
                              bounds=(lo_b, hi_b), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, s_ref)})
        if not res.success:
            raise FitFailureError(f"center search failed: {res.message}",
                                  last_params=(float(res.x),))
        return float(res.x)

    center = solve(y)
    rss = rss_of(center)
    fitted = model(center)
    residuals = y - fitted
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    centers = []
    for _ in range(n_bootstrap):
        y_b = fitted + rng.choice(residuals, size=len(residuals))
        centers.append(solve(y_b))
    return FitReport(
        amplitude=1.0, half_width=s_ref, center=center, rss=rss,
        ci_amplitude=(1.0, 1.0),
        ci_half_width=(s_ref, s_ref),
        ci_center=_bootstrap_ci(np.array(centers), center))
