"""Exception types shared across the toolkit."""


class PoleError(ValueError):
    """A gamma-function argument landed on a non-positive integer."""


class ParameterError(ValueError):
    """A hypergeometric parameter set is outside the supported domain."""


class DivergenceError(ValueError):
    """A series or integral diverges for the requested arguments."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function."""


class AliasingError(ValueError):
    """Grid too coarse for the requested number of Fourier modes."""


class MomentBlowupError(ValueError):
    """Requested moment order is at or above the finiteness threshold 4/gamma^2."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class StepSizeError(ValueError):
    """Finite-difference step outside the supported range."""


class FitError(RuntimeError):
    """Least-squares expansion fit is too ill-conditioned to trust."""


class ConfigError(ValueError):
    """Invalid run configuration (bad field values or combinations)."""
