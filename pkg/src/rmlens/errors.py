"""Exception types shared across the package."""


class LensError(Exception):
    """Base class for all package errors."""


class DomainError(LensError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BranchCutError(LensError, ValueError):
    """Evaluation point too close to the support to resolve the branch."""


class NumericError(LensError, RuntimeError):
    """A numerical routine failed to reach its accuracy target."""


class ConfigError(LensError, ValueError):
    """Invalid command-line or file configuration."""
