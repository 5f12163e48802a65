"""Two-arm superposition, detector counting rate, visibility, fringe scans.

The two interferometer arms deliver Gaussian modes U1 and U2 to a common
detection plane; the detector counting rate is the transverse integral of
|U1 + U2 e^{-i phi}|^2.  Scanning phi between 0 and pi gives the fringe
visibility; its closed form for two equal-width Gaussians separated by
``delta_y`` in their common waist plane is exp(-delta_y^2 / (2 w^2)), and
``visibility_numeric`` is the quadrature route that the closed form is
checked against.

Longitudinal fringe scans carry a Gaussian coherence envelope calibrated so
the envelope is exactly 1/2 after one coherence length, with
``l_c = lambda^2 / (pi * delta_lambda)`` for a filter of FWHM bandwidth
``delta_lambda``.  The Gaussian envelope shape itself is a model choice
(consistent with a Gaussian-passband filter); only l_c and the bandwidth
are constrained.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .beams import GaussianMode, mode_amplitude
from .quadrature import integrate_rectangle

SCAN_VALUE_KINDS = ("counts", "rate", "visibility", "distinguishability")


@dataclass(frozen=True)
class SpectralFilter:
    """Interference filter: center wavelength and FWHM bandwidth, meters."""

    center_wavelength: float
    fwhm_bandwidth: float

    def __post_init__(self):
        if not (self.center_wavelength > 0.0 and math.isfinite(self.center_wavelength)):
            raise ValueError("center_wavelength must be > 0")
        if not (0.0 < self.fwhm_bandwidth < self.center_wavelength / 10.0):
            raise ValueError("fwhm_bandwidth must satisfy 0 < fwhm < center/10")


@dataclass(frozen=True)
class ArmConfiguration:
    """The two arm modes plus the controllable phase and path-length delay."""

    mode_1: GaussianMode
    mode_2: GaussianMode
    phase: float = 0.0
    delay: float = 0.0

    def __post_init__(self):
        if self.mode_1.wavelength != self.mode_2.wavelength:
            raise ValueError("arm modes must share a wavelength")
        if not (math.isfinite(self.phase) and math.isfinite(self.delay)):
            raise ValueError("phase and delay must be finite")


@dataclass(frozen=True)
class ScanResult:
    """A 1-D sweep: (abscissa, value) pairs with a value-kind tag."""

    axis_label: str
    points: tuple[tuple[float, float], ...]
    value_kind: str

    def __post_init__(self):
        if self.value_kind not in SCAN_VALUE_KINDS:
            raise ValueError(f"value_kind must be one of {SCAN_VALUE_KINDS}")
        if not self.points:
            raise ValueError("scan must contain at least one point")
        prev = None
        for a, v in self.points:
            if not (math.isfinite(a) and math.isfinite(v)):
                raise ValueError("scan points must be finite")
            if v < 0.0:
                raise ValueError("scan values must be nonnegative")
            if prev is not None and a <= prev:
                raise ValueError("scan abscissae must be strictly increasing")
            prev = a

    @classmethod
    def from_arrays(cls, axis_label: str, abscissae: Iterable[float],
                    values: Iterable[float], value_kind: str) -> "ScanResult":
        pts = tuple((float(a), float(v)) for a, v in zip(abscissae, values, strict=True))
        return cls(axis_label, pts, value_kind)

    @property
    def abscissae(self) -> np.ndarray:
        return np.array([a for a, _ in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.points])


def superposed_intensity(config: ArmConfiguration, x: float, y: float,
                         z: float) -> float:
    """|U1 + U2 e^{-i phase}|^2 at a single point of the plane ``z``."""
    u1 = mode_amplitude(config.mode_1, x, y, z)
    u2 = mode_amplitude(config.mode_2, x, y, z)
    rot = complex(math.cos(config.phase), -math.sin(config.phase))
    return abs(u1 + u2 * rot) ** 2


def _intensity_integrand(config: ArmConfiguration, z: float):
    m1, m2 = config.mode_1, config.mode_2
    wavelength = m1.wavelength
    phase = config.phase

    def f(xs, ys):
        return kernels.superposed_intensity_grid(
            xs, ys, z, wavelength, phase,
            m1.waist_radius, m1.waist_z, m1.offset[0], m1.offset[1],
            m1.tilt[0], m1.tilt[1],
            m2.waist_radius, m2.waist_z, m2.offset[0], m2.offset[1],
            m2.tilt[0], m2.tilt[1])

    return f


def detector_rate(config: ArmConfiguration, z: float,
                  rtol: float = 1e-8) -> float:
    """Counting rate: transverse integral of the superposed intensity.

    The integration square is centered between the two mode axes and its
    half-width is 6 * max(w1(z), w2(z)) plus half the axis separation, so
    each Gaussian is covered out to at least six of its own radii (tail
    mass < 1e-15).  Tolerance is relative to the incoherent two-mode power,
    which bounds the integral from above.

    Raises QuadratureConvergenceError when the adaptive subdivision budget
    is exhausted (e.g. strongly tilted carriers making the integrand
    oscillatory).
    """
    m1, m2 = config.mode_1, config.mode_2
    cy1, cx1 = m1.center_at(z)
    cy2, cx2 = m2.center_at(z)
    separation = math.hypot(cy2 - cy1, cx2 - cx1)
    half = 6.0 * max(m1.radius_at(z), m2.radius_at(z)) + 0.5 * separation
    cx = 0.5 * (cx1 + cx2)
    cy = 0.5 * (cy1 + cy2)
    # \iint |U|^2 = pi w0^2 / 2 per mode, independent of z
    incoherent = 0.5 * math.pi * (m1.waist_radius ** 2 + m2.waist_radius ** 2)
    return integrate_rectangle(
        _intensity_integrand(config, z),
        cx - half, cx + half, cy - half, cy + half,
        rtol=rtol, scale=incoherent)


def visibility_analytic(delta_y: float, w: float) -> float:
    """Closed-form fringe visibility exp(-delta_y^2 / (2 w^2))."""
    if w <= 0.0:
        raise ValueError("w must be > 0")
    return math.exp(-delta_y * delta_y / (2.0 * w * w))


def visibility_numeric(config: ArmConfiguration, z: float,
                       rtol: float = 1e-8) -> float:
    """Quadrature visibility (R(phi=0) - R(phi=pi)) / (R(phi=0) + R(phi=pi)).

    The phase extremes 0 and pi are exact extrema of the counting rate, so
    no phase scanning is needed.  This is the independent numerical route
    against which ``visibility_analytic`` is validated.
    """
    r_max = detector_rate(dataclasses.replace(config, phase=0.0), z, rtol=rtol)
    r_min = detector_rate(dataclasses.replace(config, phase=math.pi), z, rtol=rtol)
    v = (r_max - r_min) / (r_max + r_min)
    return min(1.0, max(0.0, v))


def coherence_length(spectral_filter: SpectralFilter) -> float:
    """Longitudinal coherence length lambda^2 / (pi * delta_lambda)."""
    lam = spectral_filter.center_wavelength
    return lam * lam / (math.pi * spectral_filter.fwhm_bandwidth)


def coherence_envelope(delay: float, coherence_len: float) -> float:
    """Gaussian fringe envelope, calibrated to exactly 1/2 at one l_c."""
    if coherence_len <= 0.0:
        raise ValueError("coherence length must be > 0")
    u = delay / coherence_len
    return math.exp(-math.log(2.0) * u * u)


def fringe_signal(delay: float, wavelength: float, mean_rate: float,
                  local_visibility: float, phase: float = 0.0) -> float:
    """Fringe rate at one delay for a fixed (already enveloped) visibility."""
    return mean_rate * (1.0 + local_visibility
                        * math.cos(2.0 * math.pi * delay / wavelength + phase))


def transverse_visibility(config: ArmConfiguration) -> float:
    """Displacement-limited visibility of the two arm modes.

    Requires matched arm geometry (equal waist radius and waist position);
    the transverse separation of the two axes in the common waist plane
    enters the Gaussian falloff with tangential and radial components
    combined in quadrature.
    """
    m1, m2 = config.mode_1, config.mode_2
    if m1.waist_radius != m2.waist_radius or m1.waist_z != m2.waist_z:
        raise ValueError("transverse visibility requires matched arm modes")
    cy1, cx1 = m1.center_at(m1.waist_z)
    cy2, cx2 = m2.center_at(m2.waist_z)
    separation = math.hypot(cy2 - cy1, cx2 - cx1)
    return visibility_analytic(separation, m1.waist_radius)


def fringe_scan(config: ArmConfiguration, spectral_filter: SpectralFilter,
                delays: Sequence[float], mean_rate: float,
                v_ceiling: float = 1.0) -> ScanResult:
    """Longitudinal fringe scan S(delay).

    S = mean_rate * (1 + V_t * envelope(delay) * cos(2 pi delay / lambda)),
    with V_t the transverse (displacement-limited) visibility times the
    ``v_ceiling`` experimental maximum.  ``config.delay`` is a static offset
    added to every scan delay and ``config.phase`` shifts the carrier.
    """
    if mean_rate <= 0.0:
        raise ValueError("mean_rate must be > 0")
    if not (0.0 <= v_ceiling <= 1.0):
        raise ValueError("v_ceiling must lie in [0, 1]")
    v_t = v_ceiling * transverse_visibility(config)
    l_c = coherence_length(spectral_filter)
    lam = config.mode_1.wavelength
    values = []
    for d in delays:
        total = d + config.delay
        local = v_t * coherence_envelope(total, l_c)
        values.append(fringe_signal(total, lam, mean_rate, local, config.phase))
    return ScanResult.from_arrays("delay_m", delays, values, "rate")
