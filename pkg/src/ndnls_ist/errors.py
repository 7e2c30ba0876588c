"""Exception hierarchy shared across the pipeline.

Exit-code mapping lives in the CLI: configuration problems exit 4, gate /
admissibility violations exit 2, solver convergence failures exit 3.
"""


class PipelineError(Exception):
    """Base class for all pipeline-specific failures."""


class ConfigError(PipelineError):
    """Invalid configuration file, key, value, or grid parameters."""


class GateError(PipelineError):
    """Initial data fails the small-norm admissibility gate."""

    def __init__(self, value: float, threshold: float):
        self.value = value
        self.threshold = threshold
        super().__init__(
            f"gate functional {value:.6g} exceeds threshold {threshold:.6g}"
        )


class SpectralSingularityError(PipelineError):
    """min |a| or min |d| too small: data outside the soliton-free regime."""


class ConvergenceError(PipelineError):
    """Iterative solve exhausted its budget."""

    def __init__(self, message: str, residual: float, contraction: float | None = None):
        self.residual = residual
        self.contraction = contraction
        extra = f" (last residual {residual:.3e}"
        if contraction is not None:
            extra += f", est. contraction {contraction:.3f}"
        extra += ")"
        super().__init__(message + extra)


class BranchSafetyError(PipelineError):
    """1 + r_plus*r_minus came too close to the logarithm branch cut."""


class KPlaneUnstableError(PipelineError):
    """|k| too large for stable marching of the untransformed system."""


class BlowUpError(PipelineError):
    """Direct PDE integration produced NaN/overflow."""

    def __init__(self, t_last: float):
        self.t_last = t_last
        super().__init__(f"solution blew up; last valid time t = {t_last:.6g}")


class DomainTooSmallError(PipelineError):
    """Field stopped decaying at the spatial edges during a PDE run."""


class EdgeDecayWarning(UserWarning):
    """Field handed to a periodized operator does not decay at the grid edges."""
