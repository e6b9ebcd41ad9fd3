"""Scaling laws, rate bounds and multicast transmission capacity (MTC)."""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np
from scipy import special

from ..errors import DomainError
from .quadrature import DEFAULT_QUAD
from .shotnoise import (delta1, laplace_interference, mean_interference,
                        mean_log_interference)

__all__ = [
    "ScalingHypothesisWarning",
    "RateBounds",
    "delta1_hat",
    "eta",
    "closed_form_max_intensity",
    "multihop_closed_form_max_intensity",
    "rho",
    "capacity_gain",
    "optimize_tessellation",
    "convexity_certificate",
    "gain_adjusted_mtc",
    "hmax_ccdf",
    "mean_hmax",
    "rate_bounds",
    "ergodic_rate",
    "mtc",
    "divisors",
]


class ScalingHypothesisWarning(UserWarning):
    """The receiver count ``k`` is below the range where a scaling law holds."""


def divisors(n):
    return [d for d in range(1, int(n) + 1) if n % d == 0]


def _check_tessellation(v, tau):
    if int(v) != v or int(tau) != tau or v < 1 or tau < 1:
        raise DomainError("v and tau must be positive integers")
    if v > tau:
        raise DomainError("v must not exceed tau")
    if tau % v:
        raise DomainError("v must divide tau")


def delta1_hat(phi, m, alpha, a_hat=1.0, quad=DEFAULT_QUAD):
    """``[delta1(phi, inf) - delta1(phi, a_hat)] * prod_{j<m} (1 - 2/(j alpha))``.

    For ``a_hat < 1`` the inner term is the signed value of the incomplete
    beta expression, so a smaller cutoff enlarges the kernel.
    """
    if not 0 <= a_hat <= 1:
        raise DomainError("a_hat must lie in [0, 1]")
    outer = delta1(phi, math.inf, m, alpha, quad)
    inner = delta1(phi, a_hat, m, alpha, quad, allow_inner=True) if a_hat > 0 else \
        delta1(phi, 0.0, m, alpha, quad, allow_inner=True)
    factor = math.prod(1.0 - 2.0 / (j * alpha) for j in range(1, int(m)))
    return (outer - inner) * factor


def eta(config, quad=DEFAULT_QUAD):
    return 1.0 / delta1_hat(config.beta, config.m, config.alpha, config.a_hat, quad)


def _log_scale(v, tau, k, epsilon):
    """Log of ``k^(-v/tau) v^(v/tau+1) (eps (tau/v + 1))^(v/tau)``."""
    z = v / tau
    return z * math.log(epsilon * (tau / v + 1.0)) - z * math.log(k) + (z + 1.0) * math.log(v)


def rho(v, tau, epsilon):
    _check_tessellation(v, tau)
    return (epsilon * (tau / v + 1.0)) ** (v / tau) / tau**2


def closed_form_max_intensity(config, quad=DEFAULT_QUAD):
    """Asymptotic maximum contention intensity of single-hop multicast.

    ``eta (eps (tau+1))^(1/tau) / (pi s^2 beta^(2/alpha) k^(1/tau))``. Warns
    when ``k < eps^-(tau-1)``, where the approximation is not expected to hold.
    """
    k, tau, eps = config.k, config.tau, config.epsilon
    if k <= 0:
        raise DomainError("k must be positive")
    if k < eps ** -(tau - 1):
        warnings.warn(f"k={k:g} below eps^-(tau-1)={eps ** -(tau - 1):g}",
                      ScalingHypothesisWarning, stacklevel=2)
    scale = math.exp(_log_scale(1, tau, k, eps))
    return eta(config, quad) * scale / (math.pi * config.s**2 * config.beta ** (2.0 / config.alpha))


def multihop_closed_form_max_intensity(config, quad=DEFAULT_QUAD):
    """Asymptotic maximum contention intensity with ``v`` relay regions.

    ``eta k^(-v/tau) v^(v/tau+1) tau^2 rho / (pi s^2 beta^(2/alpha))``.
    """
    v, tau, k, eps = config.v, config.tau, config.k, config.epsilon
    _check_tessellation(v, tau)
    if k <= 0:
        raise DomainError("k must be positive")
    bound = v / eps ** (tau / v - 1.0)
    if k < bound:
        warnings.warn(f"k={k:g} below v/eps^(tau/v-1)={bound:g}",
                      ScalingHypothesisWarning, stacklevel=2)
    scale = math.exp(_log_scale(v, tau, k, eps))
    return eta(config, quad) * scale / (math.pi * config.s**2 * config.beta ** (2.0 / config.alpha))


def capacity_gain(v, tau, k, epsilon):
    """MTC ratio, in dB, of ``v``-region multihop multicast over single hop."""
    _check_tessellation(v, tau)
    if k <= 0 or not 0 < epsilon < 1:
        raise DomainError("need k > 0 and 0 < epsilon < 1")
    log_ratio = _log_scale(v, tau, k, epsilon) - _log_scale(1, tau, k, epsilon)
    return 10.0 * log_ratio / math.log(10.0)


def optimize_tessellation(tau, k, epsilon):
    """Divisor of ``tau`` with the largest capacity gain (exhaustive search)."""
    cands = divisors(tau)
    gains = [capacity_gain(v, tau, k, epsilon) for v in cands]
    return cands[int(np.argmax(gains))]


def convexity_certificate(v, tau):
    """Value of ``(1 + tau/v) sqrt((2 tau - v)/(2 tau + v))``; concavity needs it > 1."""
    return (1.0 + tau / v) * math.sqrt((2.0 * tau - v) / (2.0 * tau + v))


def gain_adjusted_mtc(config, g_a=1.0, g_s=1.0, g_v=1.0):
    """Factor ``g_a g_s^(2/alpha) g_v^(1 + 1/tau)`` applied to the single-hop MTC.

    ``g_a`` scales interference avoidance (fewer contenders), ``g_s``
    interference suppression (smaller threshold) and ``g_v`` area shrinking.
    """
    for name, g in (("g_a", g_a), ("g_s", g_s), ("g_v", g_v)):
        if not g >= 1:
            raise DomainError(f"{name} must be at least 1")
    x = -1.0 / config.tau
    return g_a * g_s ** (2.0 / config.alpha) * g_v ** (1.0 - x)


# --------------------------------------------------------------------------
# multicast rate


def hmax_ccdf(x, m, tau):
    """``P[max of tau Gamma(m, 1/m) draws > x]``."""
    cdf = special.gammainc(m, m * np.asarray(x, dtype=float))
    return -np.expm1(tau * np.log(cdf)) if np.all(cdf > 0) else 1.0 - cdf**tau


def mean_hmax(m, tau, quad=DEFAULT_QUAD):
    if m == 1:
        return float(np.sum(1.0 / np.arange(1, tau + 1)))
    return quad.quad_to_inf(lambda h: float(hmax_ccdf(h, m, tau)), 0.0, split=1.0)


class RateBounds(NamedTuple):
    lower: float
    upper: float


def rate_bounds(lambda_t, config, quad=DEFAULT_QUAD):
    """Lower and upper bounds (bits/s/Hz) on the cluster-edge multicast rate.

    lower: ``log2(1 + 1/(pi s^alpha lambda_t)) * P[H_max > 2/(alpha-2)]``
    upper: ``log2(1 + 1/(pi s^2 lambda_t)) + log2(E[H_max] / gamma2)`` with
    ``gamma2 = exp(E[ln I]) / E[I] <= 1``.
    """
    if not lambda_t > 0:
        raise DomainError("lambda_t must be positive")
    s, alpha, m, tau = config.s, config.alpha, config.m, config.tau
    tail = float(hmax_ccdf(2.0 / (alpha - 2.0), m, tau))
    lower = math.log2(1.0 + 1.0 / (math.pi * s**alpha * lambda_t)) * tail
    log_gamma2 = mean_log_interference(lambda_t, m, alpha, quad) \
        - math.log(mean_interference(lambda_t, alpha))
    upper = (math.log2(1.0 + 1.0 / (math.pi * s**2 * lambda_t))
             + math.log2(mean_hmax(m, tau, quad)) - log_gamma2 / math.log(2.0))
    return RateBounds(lower, upper)


def ergodic_rate(lambda_t, config, quad=DEFAULT_QUAD):
    """``E[log2(1 + H_max s^-alpha / I)]`` by transform quadrature.

    Uses ``E[ln(1 + X/I)] = int_0^inf L_I(z) (1 - L_X(z)) / z dz`` with
    ``1 - L_X(z) = int_0^inf e^-y P[X > y/z] dy``.
    """
    if not lambda_t > 0:
        raise DomainError("lambda_t must be positive")
    s, alpha, m, tau = config.s, config.alpha, config.m, config.tau
    gain = s**alpha

    def one_minus_lx(z):
        c = gain / z
        if m == 1:
            # E[exp(-w H_max)] = tau B(1 + w, tau) for unit exponentials
            w = 1.0 / c
            return -math.expm1(math.log(tau) + special.betaln(1.0 + w, tau))
        return quad.quad_to_inf(lambda y: math.exp(-y) * float(hmax_ccdf(c * y, m, tau)),
                                0.0, split=1.0)

    def f(u):
        z = math.exp(u)
        return laplace_interference(z, lambda_t, math.inf, m, alpha, quad) * one_minus_lx(z)

    centre = math.log(gain)
    val = quad.quad(f, centre - 50.0, centre + 50.0, points=[centre, -math.log(lambda_t)])
    return val / math.log(2.0)


def mtc(config, lambda_bar, b):
    """Multicast transmission capacity ``b lambda_bar (1 - eps) / tau``."""
    if not (lambda_bar >= 0 and b >= 0):
        raise DomainError("lambda_bar and b must be nonnegative")
    return b * lambda_bar * (1.0 - config.epsilon) / config.tau
