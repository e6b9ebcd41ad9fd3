"""Configuration-bound facade over the analytic functions."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

from ..model import NetworkConfig
from . import capacity, outage, shotnoise
from .quadrature import DEFAULT_QUAD, QuadratureSpec


@dataclass(frozen=True)
class AnalyticKernel:
    """Analytic quantities for one :class:`NetworkConfig`.

    The only mutable state is a lock-protected memo of
    ``delta1(beta r^alpha, inf)`` keyed by ``r``.
    """

    config: NetworkConfig
    quad: QuadratureSpec = DEFAULT_QUAD
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False,
                                  compare=False)

    def delta1_at(self, r):
        with self._lock:
            hit = self._memo.get(r)
        if hit is None:
            c = self.config
            hit = shotnoise.delta1(c.beta * r**c.alpha, math.inf, c.m, c.alpha, self.quad)
            with self._lock:
                self._memo[r] = hit
        return hit

    def delta1(self, phi, r=math.inf):
        return shotnoise.delta1(phi, r, self.config.m, self.config.alpha, self.quad)

    def delta2(self, phi, r):
        return shotnoise.delta2(phi, r, self.config.m, self.config.alpha, self.quad)

    def laplace(self, phi, lambda_sum=None, r=math.inf):
        lam = self.config.lambda_t if lambda_sum is None else lambda_sum
        return shotnoise.laplace_interference(phi, lam, r, self.config.m, self.config.alpha,
                                              self.quad)

    def mgf(self, phi, r, lambda_sum=None):
        lam = self.config.lambda_t if lambda_sum is None else lambda_sum
        return shotnoise.mgf_interference(phi, lam, r, self.config.m, self.config.alpha,
                                          self.quad)

    def lambda_c(self, r, tau=None, lambda_t=None):
        tau = self.config.tau if tau is None else tau
        return outage.lambda_c(r, tau, self.config, lambda_t, quad=self.quad)

    def outage(self, lambda_t=None, tau=None):
        lt = self.config.lambda_t if lambda_t is None else lambda_t
        tau = self.config.tau if tau is None else tau
        return outage.outage_probability(lt, tau, self.config, quad=self.quad)

    def max_intensity(self):
        return outage.solve_max_intensity(self.config, quad=self.quad)

    def closed_form_max_intensity(self):
        if self.config.v > 1:
            return capacity.multihop_closed_form_max_intensity(self.config, self.quad)
        return capacity.closed_form_max_intensity(self.config, self.quad)

    def eta(self):
        return capacity.eta(self.config, self.quad)

    def rate_bounds(self, lambda_t=None):
        lt = self.config.lambda_t if lambda_t is None else lambda_t
        return capacity.rate_bounds(lt, self.config, self.quad)

    def rate(self, lambda_t=None):
        lt = self.config.lambda_t if lambda_t is None else lambda_t
        return capacity.ergodic_rate(lt, self.config, self.quad)

    def mtc(self):
        """Exact-root MTC with the rate evaluated at that root."""
        lam = self.max_intensity()
        return capacity.mtc(self.config, lam, self.rate(lam))
