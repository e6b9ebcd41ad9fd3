"""Shot-noise functionals of a Poisson field with Nakagami-m marks.

The interference at a point is ``I = sum_i H_i l(|X_i|)`` where the ``X_i``
form a PPP and ``H_i ~ Gamma(m, 1/m)``. Everything here reduces to two
radial kernels:

    delta1(phi, r) = 2 int_1^r [1 - (1 + phi x^-a / m)^-m] x dx
    delta2(phi, r) = 2 int_1^r [(1 - phi x^-a / m)^-m - 1] x dx

so that ``E[exp(-phi I)] = exp(-pi lam delta1)`` and
``E[exp(phi I)] = exp(pi lam delta2)`` for interferers in ``1 <= |x| <= r``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from ..errors import DomainError
from .quadrature import DEFAULT_QUAD

__all__ = [
    "delta1",
    "delta1_derivative",
    "delta2",
    "laplace_interference",
    "laplace_derivatives",
    "mgf_interference",
    "psi_derivative",
    "mean_interference",
    "mean_log_interference",
]


def _check_shape(m, alpha):
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    if not alpha > 2:
        raise DomainError("alpha must exceed 2")
    return int(m)


def _beta_segment(p, q, a_lo, a_hi):
    """B(p, q) times the regularized incomplete beta mass between
    ``a_lo/(1+a_lo)`` and ``a_hi/(1+a_hi)``; ``a_hi`` may be infinite and
    ``a_hi < a_lo`` gives a negative value."""
    x_lo = a_lo / (1.0 + a_lo)
    x_hi = 1.0 if math.isinf(a_hi) else a_hi / (1.0 + a_hi)
    # take the difference on whichever tail is smaller to limit cancellation
    if min(x_lo, x_hi) > 0.5:
        mass = special.betaincc(p, q, x_lo) - special.betaincc(p, q, x_hi)
    else:
        mass = special.betainc(p, q, x_hi) - special.betainc(p, q, x_lo)
    return special.beta(p, q) * mass


def _delta1_beta(phi, r, m, alpha):
    j = np.arange(m)
    p = j + 2.0 / alpha
    q = m - p
    a_lo = m / phi
    a_hi = math.inf if math.isinf(r) else m * r**alpha / phi
    terms = special.comb(m, j) * _beta_segment(p, q, a_lo, a_hi)
    return (2.0 / alpha) * (phi / m) ** (2.0 / alpha) * float(np.sum(terms))


def _delta1_quad(phi, r, m, alpha, quad):
    def f(x):
        y = phi * x**-alpha / m
        return -2.0 * x * math.expm1(-m * math.log1p(y))

    if math.isinf(r):
        split = max(1.0, (phi / m) ** (1.0 / alpha))
        return quad.quad_to_inf(f, 1.0, split)
    return quad.quad(f, 1.0, r)


def delta1(phi, r, m, alpha, quad=DEFAULT_QUAD, *, allow_inner=False):
    """Laplace kernel ``delta1(phi, r)`` for ``phi > 0`` and ``r >= 1``.

    ``r`` may be ``inf``. With ``allow_inner=True`` a radius in ``[0, 1)``
    is accepted and the incomplete-beta expression is evaluated as written,
    which yields a signed (nonpositive) value.
    """
    m = _check_shape(m, alpha)
    if not phi > 0:
        if phi == 0:
            return 0.0
        raise DomainError("phi must be positive")
    if math.isnan(r) or r < 0 or (r < 1 and not allow_inner):
        raise DomainError("r must be at least 1")
    if r == 1:
        return 0.0
    if r < 1 or quad.delta1_method == "beta":
        return _delta1_beta(phi, r, m, alpha)
    return _delta1_quad(phi, r, m, alpha, quad)


def delta1_derivative(order, phi, r, m, alpha):
    """``d^order/dphi^order delta1(phi, r)`` by differentiating under the integral.

    Each derivative is again an incomplete beta integral with parameters
    ``(order - 2/alpha, m + 2/alpha)``.
    """
    m = _check_shape(m, alpha)
    if order == 0:
        return delta1(phi, r, m, alpha)
    if order < 0 or int(order) != order:
        raise DomainError("order must be a nonnegative integer")
    if not phi > 0:
        raise DomainError("phi must be positive")
    if r < 1:
        raise DomainError("r must be at least 1")
    if r == 1:
        return 0.0
    k = int(order)
    p = k - 2.0 / alpha
    q = m + 2.0 / alpha
    t_hi = phi / m
    t_lo = 0.0 if math.isinf(r) else phi * r**-alpha / m
    seg = _beta_segment(p, q, t_lo, t_hi)
    rising = special.poch(m, k)
    return (2.0 * (-1) ** (k + 1) * rising / alpha * (phi / m) ** (2.0 / alpha)
            * phi**-k * seg)


def delta2(phi, r, m, alpha, quad=DEFAULT_QUAD):
    """Moment-generating kernel ``delta2(phi, r)``; requires ``0 < phi < m r^alpha``.

    Inside that interval but with ``phi >= m`` the nearest interferers make
    the MGF diverge and ``inf`` is returned.
    """
    m = _check_shape(m, alpha)
    if math.isinf(r) or r < 1:
        raise DomainError("r must be finite and at least 1")
    if not 0 < phi < m * r**alpha:
        raise DomainError("phi must lie in (0, m r^alpha)")
    if r == 1:
        return 0.0
    if phi >= m:
        return math.inf

    def f(x):
        y = phi * x**-alpha / m
        return 2.0 * x * math.expm1(-m * math.log1p(-y))

    return quad.quad(f, 1.0, r)


def laplace_interference(phi, lambda_sum, r, m, alpha, quad=DEFAULT_QUAD):
    """``E[exp(-phi I)]`` for interferers of intensity ``lambda_sum`` in ``1 <= |x| <= r``."""
    if phi < 0:
        raise DomainError("phi must be nonnegative")
    if phi == 0 or lambda_sum == 0:
        return 1.0
    return math.exp(-math.pi * lambda_sum * delta1(phi, r, m, alpha, quad))


def mgf_interference(phi, lambda_sum, r, m, alpha, quad=DEFAULT_QUAD):
    """``E[exp(phi I)]``; ``inf`` where the moment generating function diverges."""
    d2 = delta2(phi, r, m, alpha, quad)
    if math.isinf(d2):
        return math.inf
    return math.exp(math.pi * lambda_sum * d2)


def _richardson(f, x, order, h):
    """Central ``order``-th difference with Richardson extrapolation over h, h/2, h/4."""
    if order == 0:
        return f(x)
    idx = np.arange(order + 1)
    weights = special.comb(order, idx) * (-1.0) ** idx
    offsets = order / 2.0 - idx

    def central(step):
        return sum(w * f(x + o * step) for w, o in zip(weights, offsets)) / step**order

    d = [central(h / 2**i) for i in range(3)]
    e1 = [(4.0 * d[i + 1] - d[i]) / 3.0 for i in range(2)]
    return (16.0 * e1[1] - e1[0]) / 15.0


def laplace_derivatives(n, phi, lambda_sum, m, alpha, r=math.inf, quad=DEFAULT_QUAD):
    """Derivatives ``L^(0..n)(phi)`` of the Laplace transform of the interference."""
    L0 = laplace_interference(phi, lambda_sum, r, m, alpha, quad)
    if n == 0 or lambda_sum == 0:
        return np.array([L0] + [0.0] * n)
    if quad.derivative_step_policy == "richardson":
        def L(z):
            return laplace_interference(z, lambda_sum, r, m, alpha, quad)

        h = phi * 1e-3
        return np.array([L0] + [_richardson(L, phi, j, h) for j in range(1, n + 1)])
    # L = exp(g) with g = -pi lam delta1, so L^(k) = sum C(k-1, i) g^(i+1) L^(k-1-i)
    g = [-math.pi * lambda_sum * delta1_derivative(i, phi, r, m, alpha) for i in range(n + 1)]
    out = [L0]
    for k in range(1, n + 1):
        out.append(sum(special.comb(k - 1, i, exact=True) * g[i + 1] * out[k - 1 - i]
                       for i in range(k)))
    return np.array(out)


def psi_derivative(order, phi, lambda_t, m, alpha, r=math.inf, quad=DEFAULT_QUAD):
    """``(-1)^n phi^(n+1) / n! * d^n/dphi^n [L(phi)/phi]`` with ``n = order``.

    Equivalently ``sum_{j<=n} (-phi)^j L^(j)(phi) / j!``. At ``phi = m beta r^alpha``
    and ``n = m - 1`` this is the probability that a Nakagami-m link of
    length ``r`` beats threshold ``beta``.
    """
    if order < 0 or int(order) != order:
        raise DomainError("order must be a nonnegative integer")
    if not phi > 0:
        raise DomainError("phi must be positive")
    if lambda_t == 0:
        return 1.0
    d = laplace_derivatives(int(order), phi, lambda_t, m, alpha, r, quad)
    j = np.arange(order + 1)
    val = float(np.sum((-phi) ** j * d / special.factorial(j)))
    return min(max(val, 0.0), 1.0)


def mean_interference(lambda_t, alpha):
    """Campbell mean of interference from an infinite field beyond unit distance."""
    if not alpha > 2:
        raise DomainError("alpha must exceed 2")
    return 2.0 * math.pi * lambda_t / (alpha - 2.0)


def mean_log_interference(lambda_t, m, alpha, quad=DEFAULT_QUAD):
    """``E[ln I]`` via ``int_0^inf (exp(-z) - L_I(z)) / z dz`` (Frullani-type identity)."""
    if not lambda_t > 0:
        raise DomainError("lambda_t must be positive")

    def f(u):
        z = math.exp(u)
        return math.exp(-z) - laplace_interference(z, lambda_t, math.inf, m, alpha, quad)

    return quad.quad(f, -40.0, 60.0, points=[0.0, math.log(1.0 / lambda_t)])
