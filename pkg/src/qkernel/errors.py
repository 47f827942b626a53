"""Exception types shared across the package."""


class QKernelError(Exception):
    """Base class for all qkernel errors."""


class DomainError(QKernelError):
    """An argument lies outside the mathematical domain of an operation."""


class TruncationExceeded(QKernelError):
    """An infinite product or series did not meet its tolerance within the
    configured term cap (usually a sign of divergence or an overly tight
    tolerance)."""


class PoleInDenominator(QKernelError):
    """A denominator q-shifted factorial vanishes (a parameter sits on the
    q^{-j} pole lattice)."""


class QuadratureNotConverged(QKernelError):
    """Node doubling hit its cap before successive quadrature estimates
    agreed to tolerance."""


class UnknownIdentity(QKernelError):
    """Requested identity id is not in the registry."""
