"""Exception types shared across the package."""


class MzDualityError(Exception):
    """Base class for all package-specific errors."""


class ParaxialTiltError(MzDualityError, ValueError):
    """A mode tilt exceeds the paraxial small-angle limit."""


class QuadratureConvergenceError(MzDualityError):
    """Adaptive quadrature exhausted its panel budget before reaching tolerance.

    Carries the tolerance that was actually achieved so callers can decide
    whether the partial result is still usable.
    """

    def __init__(self, message: str, achieved_rtol: float, value: float):
        super().__init__(message)
        self.achieved_rtol = achieved_rtol
        self.value = value


class UndefinedVisibilityError(MzDualityError, ValueError):
    """Visibility is undefined for the given scan (e.g. all counts zero)."""


class UndefinedEstimateError(MzDualityError, ValueError):
    """An estimator has no defined value (e.g. zero total coincidences)."""


class FitFailureError(MzDualityError):
    """Nonlinear fit failed to converge or the data are degenerate.

    ``last_params`` holds the final iterate (may be None for degenerate input
    rejected before iterating).
    """

    def __init__(self, message: str, last_params=None):
        super().__init__(message)
        self.last_params = last_params


class ScenarioError(MzDualityError, ValueError):
    """A scenario file failed validation.

    ``diagnostics`` is a list of (field_path, reason) pairs.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(f"{path}: {reason}" for path, reason in self.diagnostics)
        super().__init__(f"invalid scenario: {lines}")
