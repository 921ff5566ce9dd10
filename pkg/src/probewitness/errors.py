"""Exception hierarchy.

Each class carries the process exit code the command line maps it to.
"""


class ProbeError(Exception):
    exit_code = 1


class ConfigError(ProbeError, ValueError):
    """Invalid or incomplete scenario configuration."""

    exit_code = 2


class DomainError(ProbeError, ValueError):
    """Inputs outside the physical domain of a formula (e.g. lambda >= omega)."""

    exit_code = 3


class DimensionError(DomainError):
    pass


class HermiticityError(DomainError):
    pass


class LeakageError(DomainError):
    """Operator is not block diagonal in the system index."""


class TruncationError(DomainError):
    """Fock truncation fails the convergence gate."""


class ResourceCapError(ProbeError):
    """Hilbert space dimension exceeds the configured cap."""

    exit_code = 4
