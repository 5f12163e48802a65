"""Selects the field-evaluation kernel backend at import time.

The compiled extension is preferred; the numpy implementation is the
fallback for source checkouts without a compiler.  Set the environment
variable ``MZDUALITY_PURE_PYTHON=1`` before import to force the fallback
(used by the test suite and the benchmark).
"""

import os

if os.environ.get("MZDUALITY_PURE_PYTHON", "0") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
mode_amplitude_grid = _impl.mode_amplitude_grid
superposed_intensity_grid = _impl.superposed_intensity_grid
