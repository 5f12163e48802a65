"""Pure-numpy evaluation kernels for Gaussian-mode fields.

These are the reference implementations of the hot inner loops (the
integrand of the detector-rate quadrature).  A Cython twin lives in
``_fastkernels.pyx``; :mod:`mzduality.kernels` picks whichever is available
at import time.  Both backends must agree to double precision rounding, and
``tests/test_kernels.py`` enforces that.

Conventions
-----------
* Transverse pairs are ordered (tangential, radial) = (y, x).
* A mode axis crosses the ``z = 0`` plane at its ``offset`` and moves
  linearly with tilt: center(z) = offset + tilt * z.
* On-axis amplitude at the waist is 1 (not unit power).
"""

import numpy as np

BACKEND = "python"


def mode_amplitude_grid(xs, ys, z, w0, wavelength, waist_z,
                        off_y, off_x, tilt_y, tilt_x):
    """Complex TEM00 amplitude at points (xs, ys) in the plane ``z``.

    xs, ys are 1-D float arrays of equal length; returns a complex array of
    the same length.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    zeta = z - waist_z
    big_z = zeta * wavelength / (np.pi * w0 * w0)
    denom = 1.0 - 1j * big_z
    xr = xs - (off_x + tilt_x * z)
    yr = ys - (off_y + tilt_y * z)
    rho2 = xr * xr + yr * yr
    k = 2.0 * np.pi / wavelength
    carrier = -k * (tilt_x * xs + tilt_y * ys)
    return np.exp(-rho2 / (w0 * w0 * denom) + 1j * carrier) / denom


def superposed_intensity_grid(xs, ys, z, wavelength, phase,
                              w0_1, waist_z_1, off_y_1, off_x_1, tilt_y_1, tilt_x_1,
                              w0_2, waist_z_2, off_y_2, off_x_2, tilt_y_2, tilt_x_2):
    """|U1 + U2 * exp(-i*phase)|^2 at points (xs, ys) in the plane ``z``."""
    u1 = mode_amplitude_grid(xs, ys, z, w0_1, wavelength, waist_z_1,
                             off_y_1, off_x_1, tilt_y_1, tilt_x_1)
    u2 = mode_amplitude_grid(xs, ys, z, w0_2, wavelength, waist_z_2,
                             off_y_2, off_x_2, tilt_y_2, tilt_x_2)
    field = u1 + u2 * np.exp(-1j * phase)
    return (field * field.conjugate()).real
