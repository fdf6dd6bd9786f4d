"""Exception types shared across the package."""


class PointwalkError(Exception):
    """Base class for all package errors."""


class ValidationError(PointwalkError):
    """A walk description failed validation."""


class NotAProbability(ValidationError):
    """Row weights are negative or do not sum to one."""


class NotSymmetric(ValidationError):
    """A kernel required to satisfy w(u) = w(-u) does not."""


class NotAntisymmetric(ValidationError):
    """A kernel required to satisfy w(u) = -w(-u) does not."""


class Reducible(ValidationError):
    """The walk does not reach a full-rank sublattice from the origin."""


class DimensionMismatch(ValidationError):
    """Kernels or vectors disagree on the lattice dimension."""


class DegenerateCovariance(PointwalkError):
    """The step covariance matrix is not positive definite."""


class SingularCovariance(PointwalkError):
    """A covariance matrix passed to an asymptotic evaluator is singular."""


class PeriodicKernel(PointwalkError):
    """Asymptotic evaluators require an aperiodic free walk."""


class BoxTooSmall(PointwalkError):
    """The requested box cannot hold the walk support without truncation."""


class WrongParity(PointwalkError):
    """An operation received a perturbation of the wrong symmetry class."""


class CapExceeded(PointwalkError):
    """A combinatorial evaluator was asked to run past its horizon cap."""


class GridTooSmall(PointwalkError):
    """The Fourier grid is too small to hold the walk support without aliasing."""


class QuadratureNotConverged(PointwalkError):
    """Adaptive quadrature hit the subdivision cap before reaching tolerance."""


class UnsupportedDimension(PointwalkError):
    """No closed-form evaluator exists for the requested dimension."""
