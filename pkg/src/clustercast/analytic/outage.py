"""Connection intensity, multicast outage and maximum contention intensity."""

from __future__ import annotations

import math

from scipy import optimize

from ..errors import DomainError, NoSolutionError
from .quadrature import DEFAULT_QUAD
from .shotnoise import delta1, laplace_interference, psi_derivative

__all__ = [
    "connection_probability",
    "lambda_c",
    "mean_lambda_c",
    "mean_lambda_c_upper",
    "outage_probability",
    "solve_max_intensity",
    "delta1_at_threshold",
]

BRANCHES = ("auto", "rayleigh", "nakagami")


def connection_probability(r, config, lambda_t=None, branch="auto", quad=DEFAULT_QUAD):
    """Probability that one attempt over a link of length ``r`` reaches SIR ``beta``.

    ``branch="rayleigh"`` is the exponential formula, valid only for ``m=1``.
    ``branch="nakagami"`` goes through the ``m-1``-th derivative functional
    and is valid for every ``m``. ``"auto"`` picks the former when ``m=1``.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    lt = config.lambda_t if lambda_t is None else lambda_t
    if lt == 0:
        return 1.0
    m, alpha, beta = config.m, config.alpha, config.beta
    if branch == "auto":
        branch = "rayleigh" if m == 1 else "nakagami"
    if branch == "rayleigh":
        if m != 1:
            raise DomainError("the exponential branch requires m = 1")
        return laplace_interference(beta * r**alpha, lt, math.inf, 1, alpha, quad)
    return psi_derivative(m - 1, m * beta * r**alpha, lt, m, alpha, quad=quad)


def lambda_c(r, tau, config, lambda_t=None, branch="auto", quad=DEFAULT_QUAD):
    """Intensity of receivers at distance ``r`` that connect within ``tau`` attempts."""
    if not 1 <= r <= config.s:
        raise DomainError("r must lie in [1, s]")
    if tau < 1 or int(tau) != tau:
        raise DomainError("tau must be a positive integer")
    p = connection_probability(r, config, lambda_t, branch, quad)
    # 1 - (1-p)^tau without cancellation when p is tiny
    miss = -math.expm1(tau * math.log1p(-p)) if p < 1 else 1.0
    return config.lambda_r * miss


def _average_over_cluster(fn, s, quad):
    """``E_R[fn(max(R, 1))]`` for ``R`` with density ``2r/s^2`` on ``[0, s]``.

    Receivers inside unit distance see the clamped desired gain, so they
    share the connection probability of ``r = 1``.
    """
    inner = fn(1.0) / s**2
    return inner + quad.quad(lambda r: fn(r) * 2.0 * r / s**2, 1.0, s)


def mean_lambda_c(tau, config, lambda_t=None, branch="auto", quad=DEFAULT_QUAD):
    """``E_R[lambda_c(R, tau)]`` by direct quadrature."""
    return _average_over_cluster(
        lambda r: lambda_c(r, tau, config, lambda_t, branch, quad), config.s, quad)


def mean_lambda_c_upper(tau, config, lambda_t=None, branch="auto", quad=DEFAULT_QUAD):
    """Upper bound ``lambda_r [1 - (1 - E_R[p(R)])^tau]`` from Jensen/Hoelder."""
    mean_p = _average_over_cluster(
        lambda r: connection_probability(r, config, lambda_t, branch, quad), config.s, quad)
    mean_p = min(max(mean_p, 0.0), 1.0)
    return config.lambda_r * (1.0 - (1.0 - mean_p) ** tau)


def outage_probability(lambda_t, tau, config, branch="auto", quad=DEFAULT_QUAD):
    """Probability that some receiver of the typical cluster misses all ``tau`` attempts."""
    if lambda_t < 0:
        raise DomainError("lambda_t must be nonnegative")
    if lambda_t == 0 or config.lambda_r == 0:
        return 0.0
    disconnected = config.lambda_r - mean_lambda_c(tau, config, lambda_t, branch, quad)
    p = -math.expm1(-math.pi * config.s**2 * max(disconnected, 0.0))
    return min(max(p, 0.0), 1.0)


def solve_max_intensity(config, tau=None, epsilon=None, quad=DEFAULT_QUAD,
                        lo=1e-10, hi=1e3, rtol=1e-10):
    """Largest ``lambda_t`` whose outage equals ``epsilon`` (exact root, log scale).

    The bracket is grown upward by factors of ten from ``lo``; if outage
    never reaches ``epsilon`` below ``hi`` a :class:`NoSolutionError` is raised.
    """
    tau = config.tau if tau is None else tau
    eps = config.epsilon if epsilon is None else epsilon

    def gap(log_lt):
        return outage_probability(math.exp(log_lt), tau, config, quad=quad) - eps

    if gap(math.log(lo)) >= 0:
        raise NoSolutionError(f"outage already reaches epsilon at lambda_t={lo:g}")
    a = lo
    while True:
        b = a * 10.0
        if b > hi:
            raise NoSolutionError(f"outage stays below epsilon up to lambda_t={hi:g}")
        if gap(math.log(b)) > 0:
            break
        a = b
    root = optimize.brentq(gap, math.log(a), math.log(b), xtol=1e-13, rtol=rtol)
    return math.exp(root)


def delta1_at_threshold(config, r, quad=DEFAULT_QUAD):
    """``delta1(beta r^alpha, inf)`` for the configured fading (unicast exponent)."""
    return delta1(config.beta * r**config.alpha, math.inf, config.m, config.alpha, quad)
