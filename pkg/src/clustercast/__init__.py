"""Outage and multicast transmission capacity of Poisson-clustered wireless
networks, computed analytically and by Monte Carlo simulation."""

from .errors import ClusterCastError, ConfigError, DomainError, NoSolutionError, NumericalError
from .model import NetworkConfig, NetworkRealization, Region, Tessellation, tessellate

__version__ = "0.1.0"

__all__ = [
    "ClusterCastError", "ConfigError", "DomainError", "NoSolutionError", "NumericalError",
    "NetworkConfig", "NetworkRealization", "Region", "Tessellation", "tessellate",
    "__version__",
]
