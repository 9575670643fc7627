"""Exception types shared across the package."""


class CohgeomError(Exception):
    """Base class for all package errors."""


class BasisMismatch(CohgeomError):
    """Two state vectors refer to different bases or dimensions."""


class NormalizationError(CohgeomError):
    """A state required to be normalized is not, within its declared budget."""


class DimensionTooSmall(CohgeomError):
    """Requested truncation dimension is too small to be meaningful."""


class InvalidSpin(CohgeomError):
    """j is not a positive half-integer."""


class TruncationError(CohgeomError):
    """The truncated representation cannot meet the requested tail budget."""


class KernelError(CohgeomError):
    """Numerical kernel is empty or not one-dimensional within tolerance."""


class DomainError(CohgeomError):
    """Argument lies outside the domain of the map (disc, half plane, cone)."""


class StepError(CohgeomError):
    """Finite-difference step outside the supported range."""


class NonHermitian(CohgeomError):
    """Operator expected to be Hermitian is not, within tolerance."""


class DegenerateOrbit(CohgeomError):
    """Operation undefined on the degenerate (point) orbit t = 0."""


class UnsupportedBasePoint(CohgeomError):
    """No closed-form reference is available at this base point."""


class QuadratureError(CohgeomError):
    """Quadrature failed its refinement convergence gate."""
