"""Monte Carlo estimators with worker-count-independent random streams."""

from .duality import Disk, Rect, VoidTestResult, duality_void_test
from .engine import BLOCK_SIZE, WORKERS_ENV, default_workers, run_blocks
from .estimators import (estimate_connection_profile, estimate_laplace,
                         estimate_mean_interference, estimate_outage, estimate_rate,
                         sample_interference, simulate_multihop_outage)
from .intensity import IntensityEstimate, estimate_max_intensity
from .plan import ConnectionPoint, MeanEstimate, OutageEstimate, TrialPlan

__all__ = [
    "BLOCK_SIZE", "WORKERS_ENV", "ConnectionPoint", "Disk", "IntensityEstimate",
    "MeanEstimate", "OutageEstimate", "Rect", "TrialPlan", "VoidTestResult",
    "default_workers", "duality_void_test", "estimate_connection_profile",
    "estimate_laplace", "estimate_max_intensity", "estimate_mean_interference",
    "estimate_outage", "estimate_rate", "run_blocks", "sample_interference",
    "simulate_multihop_outage",
]
