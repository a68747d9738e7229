"""Exception types shared across the package."""


class WindlabError(Exception):
    """Base class for all package errors."""


class UnknownFamily(WindlabError):
    """A potential spec names a family the evaluator does not know."""


class NonInjectivePath(WindlabError):
    """Two sample points of a contour coincide."""


class NodeEncountered(WindlabError):
    """A sampled curve passes through (or too close to) zero; phase undefined.

    Attributes
    ----------
    index : int
        Sample index at which the magnitude fell below tolerance.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"curve magnitude below tolerance at sample {index}")


class AliasingSuspected(WindlabError):
    """A principal phase increment exceeded the per-step bound; grid too coarse.

    Attributes
    ----------
    index : int
        Index of the offending increment (between samples index and index+1).
    step : float
        The increment magnitude in radians.
    """

    def __init__(self, index, step, message=None):
        self.index = index
        self.step = step
        super().__init__(
            message or f"phase step {step:.3f} rad at sample {index} exceeds bound; refine the grid"
        )


class UnsupportedBoundary(WindlabError):
    """Discretization requested for a boundary/potential combination it cannot handle."""


class ConvergenceFailure(WindlabError):
    """An eigensolve or refinement failed to meet its residual tolerance."""


class StepFailure(WindlabError):
    """A fixed-step ODE transport exceeded its overflow guard."""


class TurningPointOnGrid(WindlabError):
    """A WKB quadrature point sits too close to a turning point E = V(x)."""


class NewtonDivergence(WindlabError):
    """Newton iteration failed; carries the last iterate for diagnostics."""

    def __init__(self, message, last_iterate=None):
        self.last_iterate = last_iterate
        super().__init__(message)


class TurningPointSuspected(WindlabError):
    """Continuation Jacobian became near-singular along a branch."""


class SeriesDivergence(WindlabError):
    """Series evaluation argument outside the guarded convergence region."""


class StepUnderflow(WindlabError):
    """Adaptive integration step fell below the hard floor."""


class WindowTooSmall(WindlabError):
    """Requested comparison window leaves too little overlap."""


class AsymmetricGrid(WindlabError):
    """Operation requires grids symmetric about the domain midpoint."""


class ConfigError(WindlabError):
    """Experiment configuration failed validation."""
