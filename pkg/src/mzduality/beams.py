"""TEM00 Gaussian-mode representation, propagation and amplitude evaluation.

A mode is parameterized by its waist radius w0 (1/e field radius), the
wavelength, the axial waist position, and an optional tilt/offset describing
where its axis sits relative to the optical axis.  Transverse pairs are
always ordered (tangential, radial) = (y, x).

Conventions used throughout:

* the complex amplitude is the standard paraxial Gaussian
  ``U = exp(-rho'^2 / (w0^2 (1 - iZ))) / (1 - iZ)`` with ``Z = zeta/z_R``
  and ``zeta`` the distance from the waist, normalized so the on-axis
  amplitude at the waist is exactly 1;
* the beam radius obeys ``w(z) = w0 * sqrt(1 + (zeta/z_R)^2)``, so the
  amplitude a distance w(z) off axis is 1/e of the on-axis value in every
  plane;
* a tilt manifests as a linearly moving axis, center(z) = offset + tilt*z,
  plus the transverse carrier phase ``exp(-i k (tilt . r))`` of the tilted
  plane-wave factor.  Tilts are restricted to the paraxial regime
  (|component| < 0.1 rad).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ParaxialTiltError

PARAXIAL_TILT_LIMIT = 0.1  # rad


@dataclass(frozen=True)
class GaussianMode:
    """A TEM00 beam.

    waist_radius: 1/e field radius at the waist, meters.
    wavelength:   meters.
    waist_z:      axial waist position relative to the z=0 (crystal) plane.
    tilt:         (tangential, radial) propagation-direction deviation, rad.
    offset:       (tangential, radial) axis position at the z=0 plane, m.
    """

    waist_radius: float
    wavelength: float
    waist_z: float = 0.0
    tilt: tuple[float, float] = (0.0, 0.0)
    offset: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.waist_radius > 0.0 and math.isfinite(self.waist_radius)):
            raise ValueError("waist_radius must be > 0")
        if not (self.wavelength > 0.0 and math.isfinite(self.wavelength)):
            raise ValueError("wavelength must be > 0")
        if not math.isfinite(self.waist_z):
            raise ValueError("waist_z must be finite")
        ty, tx = self.tilt
        if not (abs(ty) < PARAXIAL_TILT_LIMIT and abs(tx) < PARAXIAL_TILT_LIMIT):
            raise ParaxialTiltError(
                f"tilt {self.tilt} outside paraxial limit "
                f"(|component| < {PARAXIAL_TILT_LIMIT} rad)"
            )
        oy, ox = self.offset
        if not (math.isfinite(oy) and math.isfinite(ox)):
            raise ValueError("offset components must be finite")

    def center_at(self, z: float) -> tuple[float, float]:
        """Axis position (tangential, radial) in the plane ``z``."""
        return (self.offset[0] + self.tilt[0] * z,
                self.offset[1] + self.tilt[1] * z)

    def radius_at(self, z: float) -> float:
        """Beam radius in the plane ``z``."""
        return propagated_radius(self.waist_radius, z - self.waist_z,
                                 self.wavelength)


def rayleigh_range(mode: GaussianMode) -> float:
    """z_R = pi w0^2 / lambda."""
    return math.pi * mode.waist_radius ** 2 / mode.wavelength


def propagated_radius(waist_radius: float, z: float, wavelength: float) -> float:
    """Beam radius a distance ``z`` from a waist of radius ``waist_radius``.

    Standard Gaussian propagation law
    ``w(z) = w0 * sqrt(1 + (z lambda / (w0^2 pi))^2)``; even in z and
    monotone increasing in |z|.
    """
    if waist_radius <= 0.0:
        raise ValueError("waist_radius must be > 0")
    if wavelength <= 0.0:
        raise ValueError("wavelength must be > 0")
    ratio = z * wavelength / (waist_radius ** 2 * math.pi)
    return waist_radius * math.sqrt(1.0 + ratio * ratio)


def mode_amplitude(mode: GaussianMode, x: float, y: float, z: float) -> complex:
    """Complex field amplitude of ``mode`` at the point (x, y, z).

    Normalized so an untilted, centered mode has amplitude 1 + 0j on axis at
    its waist.  Raises ValueError if the result is not finite.
    """
    zeta = z - mode.waist_z
    w0 = mode.waist_radius
    big_z = zeta * mode.wavelength / (math.pi * w0 * w0)
    denom = 1.0 - 1j * big_z
    cy, cx = mode.center_at(z)
    xr = x - cx
    yr = y - cy
    rho2 = xr * xr + yr * yr
    k = 2.0 * math.pi / mode.wavelength
    ty, tx = mode.tilt
    carrier = -k * (tx * x + ty * y)
    value = cmath.exp(-rho2 / (w0 * w0 * denom) + 1j * carrier) / denom
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"non-finite amplitude at ({x}, {y}, {z})")
    return value
