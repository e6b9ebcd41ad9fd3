"""Trial plans and estimate containers."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from ..errors import DomainError
from .engine import BLOCK_SIZE, default_workers

REFRESH_MODES = ("attempt", "slot", "trial")
FIELD_MODES = ("independent", "shared")

Z95 = 1.959963984540054


@dataclass(frozen=True)
class TrialPlan:
    """How a Monte Carlo estimate is run.

    interferer_refresh
        When interferer positions are redrawn: every ``"attempt"`` (the
        temporal independence the analysis assumes), once per multicast
        ``"slot"`` of ``tau/v`` attempts, or once per ``"trial"``. Fading is
        always redrawn every attempt.
    interference_field
        ``"independent"`` gives every receiver its own receiver-centred
        interferer field, matching the independent-failure assumption of
        the analysis. ``"shared"`` places one field per cluster so that
        nearby receivers see correlated interference.
    tail_compensation
        Add the Campbell mean of the interference beyond the window.

    ``worker_count`` only affects speed: results are a pure function of
    the remaining fields and the configuration.
    """

    master_seed: int = 0
    trials: int = 10_000
    worker_count: int | None = None
    interferer_refresh: str = "attempt"
    interference_field: str = "independent"
    tail_compensation: bool = True
    block_size: int = BLOCK_SIZE

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError("trials must be a positive integer")
        if self.interferer_refresh not in REFRESH_MODES:
            raise DomainError(f"interferer_refresh must be one of {REFRESH_MODES}")
        if self.interference_field not in FIELD_MODES:
            raise DomainError(f"interference_field must be one of {FIELD_MODES}")
        if self.worker_count is not None and self.worker_count < 1:
            raise DomainError("worker_count must be positive")
        if self.block_size < 1:
            raise DomainError("block_size must be positive")

    @property
    def resample_interferers_per_slot(self):
        return self.interferer_refresh == "attempt"

    @property
    def workers(self):
        return default_workers() if self.worker_count is None else int(self.worker_count)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class OutageEstimate:
    p_hat: float
    trials: int
    std_err: float
    ci95: tuple

    @classmethod
    def from_counts(cls, hits, trials):
        if trials < 1:
            raise DomainError("trials must be at least 1")
        p = hits / trials
        se = math.sqrt(p * (1.0 - p) / trials)
        ci = (max(0.0, p - Z95 * se), min(1.0, p + Z95 * se))
        return cls(p, int(trials), se, ci)


@dataclass(frozen=True)
class MeanEstimate:
    mean: float
    trials: int
    std_err: float

    @classmethod
    def from_sums(cls, total, total_sq, n):
        mean = total / n
        var = max(total_sq / n - mean * mean, 0.0) * n / max(n - 1, 1)
        return cls(mean, int(n), math.sqrt(var / n))


@dataclass(frozen=True)
class ConnectionPoint:
    r: float
    p_connect: float
    std_err: float
