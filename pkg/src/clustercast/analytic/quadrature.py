"""Numerical integration settings shared by the analytic kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..errors import ConfigError, NumericalError

DERIVATIVE_POLICIES = ("exact", "richardson")
DELTA1_METHODS = ("beta", "quad")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and method switches for every integral in :mod:`analytic`.

    ``derivative_step_policy`` selects how derivatives of the Laplace
    transform are obtained: ``"exact"`` differentiates under the integral
    (incomplete beta closed forms), ``"richardson"`` uses central
    differences with step ``phi * 1e-3`` halved twice and extrapolated.
    ``delta1_method`` picks the incomplete-beta closed form or adaptive
    quadrature of the radial integral.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    derivative_step_policy: str = "exact"
    delta1_method: str = "beta"

    def __post_init__(self):
        problems = []
        if not self.rel_tol > 0:
            problems.append(("rel_tol", "rel_tol must be positive"))
        if not self.abs_tol > 0:
            problems.append(("abs_tol", "abs_tol must be positive"))
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 64:
            problems.append(("max_subdivisions", "max_subdivisions must be an integer >= 64"))
        if self.derivative_step_policy not in DERIVATIVE_POLICIES:
            problems.append(("derivative_step_policy",
                             f"derivative_step_policy must be one of {DERIVATIVE_POLICIES}"))
        if self.delta1_method not in DELTA1_METHODS:
            problems.append(("delta1_method", f"delta1_method must be one of {DELTA1_METHODS}"))
        if problems:
            raise ConfigError(problems)

    def quad(self, f, a, b, points=None):
        """Adaptive quadrature on a finite interval; raises on non-finite output."""
        kw = dict(epsabs=self.abs_tol, epsrel=self.rel_tol, limit=int(self.max_subdivisions))
        if points is not None:
            pts = [p for p in points if a < p < b]
            if pts:
                kw["points"] = pts
        val, _err = integrate.quad(f, a, b, **kw)
        if not np.isfinite(val):
            raise NumericalError(f"quadrature on [{a}, {b}] returned {val}")
        return val

    def quad_to_inf(self, f, a, split=None):
        """Integral of ``f`` over ``[a, inf)``.

        Integrates directly up to ``split`` and maps the tail with
        ``u = 1/x`` onto the finite interval ``(0, 1/split]``.
        """
        split = max(a, 1.0) if split is None else max(split, a)
        head = self.quad(f, a, split) if split > a else 0.0

        def g(u):
            if u == 0.0:
                return 0.0
            x = 1.0 / u
            return f(x) * x * x

        return head + self.quad(g, 0.0, 1.0 / split)


DEFAULT_QUAD = QuadratureSpec()
