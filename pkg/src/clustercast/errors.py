"""Exception hierarchy shared by all clustercast modules."""


class ClusterCastError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ClusterCastError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ClusterCastError, ValueError):
    """One or more configuration fields are invalid.

    ``problems`` holds ``(field, message)`` pairs so callers can report every
    violation at once instead of stopping at the first.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        text = "; ".join(f"{field}: {msg}" for field, msg in self.problems)
        super().__init__(text or "invalid configuration")

    @property
    def fields(self):
        return [field for field, _ in self.problems]


class NumericalError(ClusterCastError, RuntimeError):
    """A numerical procedure (root bracket, quadrature) failed."""


class NoSolutionError(NumericalError):
    """A root search could not bracket the requested target."""
