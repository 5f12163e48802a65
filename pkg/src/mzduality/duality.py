"""Click-level Monte Carlo of the complementarity experiment.

The model: a signal photon can reach the detector through two selected
TEM00 modes whose axes are transversally displaced by ``delta`` in a plane
where both have radius ``w``.  Mutual coherence of the two contributions
falls off as a Gaussian in the displacement, capped by the experimental
visibility ceiling ``v_max``; which-path knowledge comes from coincidences
with a fixed idler detector, and the two quantities trade off so that
D^2 + V^2 never exceeds 1 (equal to 1 exactly when v_max = 1).

Randomness contract: everything is derived from a single integer seed
through named ``numpy`` SeedSequence substreams (PCG64).  Phase point ``i``
of a click simulation uses spawn key (0, i), so per-point draws are
independent of evaluation order; the bootstrap uses spawn key (1,).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UndefinedEstimateError
from .estimators import fit_fringe_sinusoid
from .interference import (ScanResult, SpectralFilter, coherence_envelope,
                           coherence_length, visibility_analytic)


class DualityViolationWarning(UserWarning):
    """Raised (as a warning) when an audited D^2 + V^2 exceeds 1."""


@dataclass(frozen=True)
class DualityModel:
    """Displacement-dependent visibility/distinguishability model.

    w:     mode radius in the reference plane, meters.
    v_max: experimental visibility ceiling in [0, 1].
    delta: (tangential, radial) displacement of the second mode, meters.
    """

    w: float
    v_max: float
    delta: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.w > 0.0 and math.isfinite(self.w)):
            raise ValueError("w must be > 0")
        if not (0.0 <= self.v_max <= 1.0):
            raise ValueError("v_max must lie in [0, 1]")
        dy, dx = self.delta
        if not (math.isfinite(dy) and math.isfinite(dx)):
            raise ValueError("delta components must be finite")

    @property
    def separation(self) -> float:
        return math.hypot(self.delta[0], self.delta[1])


@dataclass(frozen=True)
class ClickStream:
    """Simulated detection record over a phase grid."""

    phase_grid: tuple[float, ...]
    signal_counts: tuple[int, ...]
    coincidence_path1: tuple[int, ...]
    coincidence_path2: tuple[int, ...]
    seed: int

    def __post_init__(self):
        n = len(self.phase_grid)
        for name in ("signal_counts", "coincidence_path1", "coincidence_path2"):
            arr = getattr(self, name)
            if len(arr) != n:
                raise ValueError(f"{name} length must match phase_grid")
            if any(c < 0 for c in arr):
                raise ValueError(f"{name} must be nonnegative")

    def signal_scan(self) -> ScanResult:
        """Signal counts as a counts-vs-phase scan."""
        order = np.argsort(self.phase_grid)
        pts = tuple((float(self.phase_grid[i]), float(self.signal_counts[i]))
                    for i in order)
        return ScanResult("phase_rad", pts, "counts")


@dataclass(frozen=True)
class Estimate:
    """Point estimate with a 95% confidence interval."""

    value: float
    ci_low: float
    ci_high: float
    stderr: float


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent, reproducible generator for (seed, key)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def derive_seed(seed: int, *key: int) -> int:
    """Derived integer seed, for handing substreams to nested simulations."""
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1)[0])


def model_visibility(model: DualityModel) -> float:
    """V = v_max * exp(-(dy^2 + dx^2) / (2 w^2))."""
    return model.v_max * visibility_analytic(model.separation, model.w)


def model_distinguishability(model: DualityModel) -> float:
    """D = sqrt(1 - exp(-(dy^2 + dx^2) / w^2)).

    This is the pure-state tradeoff D^2 + V^2 = 1 evaluated with the
    uncapped visibility; the ceiling degrades V only, so the model predicts
    D^2 + V^2 = 1 - (1 - v_max^2) exp(-sep^2/w^2), between v_max^2 and 1.
    """
    u = model.separation / model.w
    return math.sqrt(-math.expm1(-u * u))


def duality_audit(v: float, d: float) -> float:
    """d^2 + v^2, with a warning when the bound 1 is exceeded."""
    if not (0.0 <= v <= 1.0 and 0.0 <= d <= 1.0):
        raise ValueError("v and d must lie in [0, 1]")
    value = d * d + v * v
    if value > 1.0 + 1e-12:
        warnings.warn(f"duality bound exceeded: D^2+V^2 = {value:.6f}",
                      DualityViolationWarning, stacklevel=2)
    return value


def simulate_clicks(model: DualityModel, spectral_filter: SpectralFilter,
                    delay: float, phase_grid: Sequence[float],
                    pairs_per_phase: int, seed: int,
                    dark_counts_per_point: float = 0.0) -> ClickStream:
    """Draw Poisson signal counts and binomial coincidence splits per phase.

    Signal mean at phase phi is (pairs/2) * (1 + V_eff cos phi) with V_eff
    the model visibility times the longitudinal coherence envelope at
    ``delay``.  Every pair also yields one idler detection, attributed to
    path 1 with probability (1 + D)/2 (idler fixed opposite mode 1).
    Bit-reproducible for a fixed seed.
    """
    if pairs_per_phase <= 0:
        raise ValueError("pairs_per_phase must be > 0")
    if dark_counts_per_point < 0.0:
        raise ValueError("dark_counts_per_point must be >= 0")
    v_eff = model_visibility(model) * coherence_envelope(
        delay, coherence_length(spectral_filter))
    d = model_distinguishability(model)
    p1 = 0.5 * (1.0 + d)

    signal = []
    coinc1 = []
    coinc2 = []
    for i, phi in enumerate(phase_grid):
        rng = substream(seed, 0, i)
        mu = 0.5 * pairs_per_phase * (1.0 + v_eff * math.cos(phi))
        n_sig = int(rng.poisson(mu))
        if dark_counts_per_point > 0.0:
            n_sig += int(rng.poisson(dark_counts_per_point))
        n1 = int(rng.binomial(pairs_per_phase, p1))
        signal.append(n_sig)
        coinc1.append(n1)
        coinc2.append(pairs_per_phase - n1)
    return ClickStream(tuple(float(p) for p in phase_grid), tuple(signal),
                       tuple(coinc1), tuple(coinc2), seed)


def estimate_visibility(stream: ClickStream) -> Estimate:
    """Fringe visibility of the signal counts, from a fitted sinusoid.

    Fits counts = a0 + a1 cos(phi) + b1 sin(phi) by Poisson-weighted linear
    least squares and reports sqrt(a1^2 + b1^2)/a0 with a delta-method
    standard error; the estimate is clipped to [0, 1].
    """
    if sum(stream.signal_counts) == 0:
        raise UndefinedEstimateError("all signal counts are zero")
    phases = np.array(stream.phase_grid)
    counts = np.array(stream.signal_counts, dtype=np.float64)
    (a0, a1, b1), cov = fit_fringe_sinusoid(phases, counts)
    if a0 <= 0.0:
        raise UndefinedEstimateError("fitted mean count is not positive")
    s = math.hypot(a1, b1)
    v = s / a0
    if s > 0.0:
        grad = np.array([-s / a0 ** 2, a1 / (s * a0), b1 / (s * a0)])
    else:
        grad = np.array([0.0, 1.0 / a0, 1.0 / a0])
    stderr = float(math.sqrt(max(0.0, grad @ cov @ grad)))
    v_clipped = min(1.0, max(0.0, v))
    return Estimate(v_clipped,
                    min(1.0, max(0.0, v - 1.959964 * stderr)),
                    min(1.0, max(0.0, v + 1.959964 * stderr)),
                    stderr)


def estimate_distinguishability(stream: ClickStream,
                                n_bootstrap: int = 1000) -> Estimate:
    """D = (R1 - R2)/(R1 + R2) over coincidence totals, with bootstrap CI.

    The 95% interval comes from ``n_bootstrap`` resamples of the phase
    points (percentile method, then widened minimally to contain the point
    estimate); the resampling generator is derived from the stream's seed,
    so the interval is reproducible.
    """
    c1 = np.array(stream.coincidence_path1, dtype=np.int64)
    c2 = np.array(stream.coincidence_path2, dtype=np.int64)
    total = int(c1.sum() + c2.sum())
    if total == 0:
        raise UndefinedEstimateError("zero total coincidences")
    d = float((c1.sum() - c2.sum()) / total)

    n = len(c1)
    rng = substream(stream.seed, 1)
    idx = rng.integers(0, n, size=(n_bootstrap, n))
    s1 = c1[idx].sum(axis=1)
    s2 = c2[idx].sum(axis=1)
    tot = s1 + s2
    reps = np.where(tot > 0, (s1 - s2) / np.maximum(tot, 1), d)
    lo, hi = np.percentile(reps, [2.5, 97.5])
    stderr = float(reps.std(ddof=1))
    return Estimate(d, min(float(lo), d), max(float(hi), d), stderr)
