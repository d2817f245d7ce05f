"""Exception hierarchy shared by the kernel, surfaces, verification and export."""


class BjorlingError(Exception):
    """Base class for all package errors."""


class DomainError(BjorlingError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(BjorlingError, ValueError):
    """Evaluation too close to a pole or branch point.

    ``point`` is the offending singularity (a complex number).
    """

    def __init__(self, message, point):
        super().__init__(message)
        self.point = point


class PoleProximityError(SingularityError):
    """Argument within ``POLE_EPSILON`` of a pole of the Jacobi lattice."""


class BranchProximityError(SingularityError):
    """Integration path passes too close to a branch point of the integrand."""


class QuadratureError(BjorlingError, RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


class DegenerateImmersionError(BjorlingError, ArithmeticError):
    """First fundamental form is (numerically) singular at the sample point."""


class EmptyMeshError(BjorlingError, ValueError):
    """Every node of a sampling grid was masked."""


class ExportError(BjorlingError, OSError):
    """Writing a geometry file failed; the message names the destination."""
