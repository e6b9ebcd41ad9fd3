"""Network model: configuration, point sampling, path loss, fading, SIR and
the equal-area tessellation of a multicast cluster.

The typical transmitter sits at the origin; its intended receivers form a
PPP of intensity ``lambda_r`` on the disk of radius ``s`` and the other
clusters' transmitters form a PPP of intensity ``lambda_t`` on the plane
(truncated to a window of radius ``window_radius`` when sampled).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "NetworkConfig",
    "NetworkRealization",
    "Region",
    "Tessellation",
    "default_window_radius",
    "path_loss",
    "sample_fading_power",
    "sample_network",
    "sir_at",
    "tessellate",
    "uniform_disk",
    "tail_interference_mean",
    "tail_radius",
]

# Standard deviation of the interference from beyond the sampling window,
# relative to the mean interference of the whole plane.
TAIL_REL_STD = 0.01


def _is_int(x):
    return isinstance(x, Integral) and not isinstance(x, bool)


def tail_radius(lambda_t, alpha, m=1):
    """Radius beyond which the interference fluctuates by less than
    ``TAIL_REL_STD`` of its total mean.

    The tail variance is ``pi lambda E[H^2] R^(2-2 alpha) / (alpha - 1)`` and
    the total mean is ``2 pi lambda / (alpha - 2)``. Never below 5.
    """
    if lambda_t <= 0:
        return 5.0
    second_moment = 1.0 + 1.0 / m
    ratio = (second_moment * (alpha - 2.0) ** 2
             / (4.0 * math.pi * lambda_t * (alpha - 1.0) * TAIL_REL_STD**2))
    return max(5.0, ratio ** (1.0 / (2.0 * alpha - 2.0)))


def default_window_radius(s, lambda_t, alpha, m=1):
    """Radius of the explicitly sampled interferer disk around the origin.

    ``s + tail_radius(...)`` so that every receiver of the cluster sees a
    full tail-radius neighbourhood. The mean of what lies beyond is added
    back deterministically by the simulator (:func:`tail_interference_mean`),
    so only a small fluctuation is dropped.
    """
    return s + tail_radius(lambda_t, alpha, m)


def tail_interference_mean(lambda_t, radius, alpha):
    """Campbell mean of the interference from transmitters beyond ``radius``."""
    if lambda_t <= 0:
        return 0.0
    return 2.0 * math.pi * lambda_t * radius ** (2.0 - alpha) / (alpha - 2.0)


@dataclass(frozen=True)
class NetworkConfig:
    """All model parameters.

    ``window_radius=None`` means "use :func:`default_window_radius` for the
    current ``lambda_t``"; :meth:`window` resolves it.
    """

    lambda_t: float
    lambda_r: float
    s: float
    alpha: float
    beta: float
    m: int = 1
    epsilon: float = 0.1
    tau: int = 1
    v: int = 1
    window_radius: float | None = None
    a_hat: float = 1.0

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    def problems(self):
        out = []

        def bad(name, msg):
            out.append((name, msg))

        def num(name):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, (int, float, np.floating, np.integer)):
                bad(name, "must be a number")
                return None
            if not math.isfinite(val):
                bad(name, "must be finite")
                return None
            return float(val)

        lt, lr, s, alpha, beta = (num(n) for n in ("lambda_t", "lambda_r", "s", "alpha", "beta"))
        eps, a_hat = num("epsilon"), num("a_hat")
        if lt is not None and lt < 0:
            bad("lambda_t", "must be nonnegative")
        if lr is not None and lr < 0:
            bad("lambda_r", "must be nonnegative")
        if s is not None and s <= 1:
            bad("s", "s must exceed 1")
        if alpha is not None and alpha <= 2:
            bad("alpha", "alpha must exceed 2")
        if beta is not None and beta <= 0:
            bad("beta", "beta must be positive")
        if eps is not None and not 0 < eps < 1:
            bad("epsilon", "epsilon must lie in (0, 1)")
        if a_hat is not None and not 0 <= a_hat <= 1:
            bad("a_hat", "a_hat must lie in [0, 1]")
        if not _is_int(self.m) or self.m < 1:
            bad("m", "m must be a positive integer")
        tau_ok = _is_int(self.tau) and self.tau >= 1
        v_ok = _is_int(self.v) and self.v >= 1
        if not tau_ok:
            bad("tau", "tau must be a positive integer")
        if not v_ok:
            bad("v", "v must be a positive integer")
        if tau_ok and v_ok:
            if self.v > self.tau:
                bad("v", "v must not exceed tau")
            elif self.tau % self.v:
                bad("v", "v must divide tau")
        if self.window_radius is not None:
            w = num("window_radius")
            if w is not None and s is not None and w <= s:
                bad("window_radius", "window_radius must exceed s")
        return out

    @property
    def k(self):
        """Mean number of intended receivers per cluster."""
        return math.pi * self.s**2 * self.lambda_r

    def window(self, lambda_t=None):
        if self.window_radius is not None:
            return float(self.window_radius)
        lt = self.lambda_t if lambda_t is None else lambda_t
        return default_window_radius(self.s, lt, self.alpha, self.m)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled network seen from the typical transmitter at the origin."""

    receivers: np.ndarray
    interferers: np.ndarray
    typical_tx: tuple = (0.0, 0.0)


# --------------------------------------------------------------------------
# primitives


def path_loss(d, alpha, role="desired"):
    """Bounded power-law path loss.

    ``d ** -alpha`` for ``d >= 1``. Below unit distance a desired link is
    clamped to 1 and an interference link contributes 0.
    """
    if role not in ("desired", "interference"):
        raise ValueError(f"role must be 'desired' or 'interference', got {role!r}")
    arr = np.asarray(d, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("distance must be nonnegative")
    near = 1.0 if role == "desired" else 0.0
    with np.errstate(divide="ignore"):
        out = np.where(arr >= 1.0, np.maximum(arr, 1.0) ** -alpha, near)
    return float(out) if out.ndim == 0 else out


def sample_fading_power(m, rng, size=None):
    """Nakagami-m power gain: Gamma(shape=m, scale=1/m), unit mean."""
    if not _is_int(m) or m < 1:
        raise DomainError("Nakagami shape m must be an integer >= 1")
    return rng.gamma(m, 1.0 / m, size=size)


def uniform_disk(rng, n, radius, center=(0.0, 0.0)):
    r = radius * np.sqrt(rng.random(n))
    th = 2.0 * np.pi * rng.random(n)
    return np.column_stack((center[0] + r * np.cos(th), center[1] + r * np.sin(th)))


def sample_network(config, rng):
    """Receivers of the typical cluster plus interferers in the window."""
    n_rx = rng.poisson(config.k)
    window = config.window()
    n_int = rng.poisson(config.lambda_t * math.pi * window**2)
    return NetworkRealization(
        receivers=uniform_disk(rng, n_rx, config.s),
        interferers=uniform_disk(rng, n_int, window),
    )


def sir_at(receiver, interferers, fading_sig, fading_int, alpha, transmitter=(0.0, 0.0)):
    """SIR at ``receiver`` for a transmitter at ``transmitter`` (default origin).

    Returns ``inf`` when the interference sum is exactly zero.
    """
    y = np.asarray(receiver, dtype=float)
    x = np.asarray(interferers, dtype=float).reshape(-1, 2)
    h_int = np.asarray(fading_int, dtype=float).reshape(-1)
    if len(h_int) != len(x):
        raise ValueError("fading_int must align with interferers")
    signal = fading_sig * path_loss(float(np.hypot(*(y - np.asarray(transmitter)))), alpha, "desired")
    d = np.hypot(x[:, 0] - y[0], x[:, 1] - y[1])
    interference = float(np.sum(h_int * path_loss(d, alpha, "interference")))
    if interference == 0.0:
        return math.inf
    return signal / interference


# --------------------------------------------------------------------------
# tessellation


@dataclass(frozen=True)
class Region:
    """Annular sector ``r_inner <= |y| <= r_outer``, ``theta_lo <= arg y < theta_hi``.

    The central region has ``r_inner == 0`` and spans the full circle.
    """

    index: int
    r_inner: float
    r_outer: float
    theta_lo: float = 0.0
    theta_hi: float = 2.0 * math.pi

    @property
    def area(self):
        return 0.5 * (self.theta_hi - self.theta_lo) * (self.r_outer**2 - self.r_inner**2)

    def contains(self, points):
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        r = np.hypot(p[:, 0], p[:, 1])
        ok = (r <= self.r_outer) & ((r > self.r_inner) if self.r_inner > 0 else True)
        if self.theta_hi - self.theta_lo < 2.0 * math.pi:
            th = np.mod(np.arctan2(p[:, 1], p[:, 0]), 2.0 * math.pi)
            ok &= (th >= self.theta_lo) & (th < self.theta_hi)
        return ok


@dataclass(frozen=True)
class Tessellation:
    """Central disk of area ``pi s^2 / v`` plus ``v - 1`` equal-angle sectors
    of the remaining annulus. Regions are visited in index order."""

    s: float
    v: int
    regions: tuple
    path_order: tuple = field(default=())

    @property
    def inner_radius(self):
        return self.regions[0].r_outer

    def locate(self, points):
        """Region index of each point (``-1`` outside the cluster disk)."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        r = np.hypot(p[:, 0], p[:, 1])
        out = np.full(len(p), -1, dtype=np.int64)
        inside = r <= self.s
        if self.v == 1:
            out[inside] = 0
            return out
        th = np.mod(np.arctan2(p[:, 1], p[:, 0]), 2.0 * math.pi)
        sector = np.minimum((th * (self.v - 1) / (2.0 * math.pi)).astype(np.int64), self.v - 2)
        out[inside] = np.where(r[inside] <= self.inner_radius, 0, 1 + sector[inside])
        return out


def tessellate(s, v):
    if not _is_int(v) or v < 1:
        raise DomainError("tessellation count v must be an integer >= 1")
    if s <= 0:
        raise DomainError("cluster radius must be positive")
    r0 = s / math.sqrt(v)
    regions = [Region(0, 0.0, r0 if v > 1 else float(s))]
    width = 2.0 * math.pi / (v - 1) if v > 1 else 0.0
    for i in range(1, v):
        hi = 2.0 * math.pi if i == v - 1 else i * width
        regions.append(Region(i, r0, float(s), (i - 1) * width, hi))
    return Tessellation(float(s), v, tuple(regions), tuple(range(v)))
