"""Closed-form and quadrature evaluation of outage, intensity and capacity."""

from .capacity import (RateBounds, ScalingHypothesisWarning, capacity_gain,
                       closed_form_max_intensity, convexity_certificate, delta1_hat,
                       divisors, ergodic_rate, eta, gain_adjusted_mtc, hmax_ccdf,
                       mean_hmax, mtc, multihop_closed_form_max_intensity,
                       optimize_tessellation, rate_bounds, rho)
from .kernel import AnalyticKernel
from .outage import (connection_probability, delta1_at_threshold, lambda_c,
                     mean_lambda_c, mean_lambda_c_upper, outage_probability,
                     solve_max_intensity)
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .shotnoise import (delta1, delta1_derivative, delta2, laplace_derivatives,
                        laplace_interference, mean_interference, mean_log_interference,
                        mgf_interference, psi_derivative)

__all__ = [
    "AnalyticKernel", "QuadratureSpec", "DEFAULT_QUAD", "RateBounds",
    "ScalingHypothesisWarning", "capacity_gain", "closed_form_max_intensity",
    "connection_probability", "convexity_certificate", "delta1", "delta1_at_threshold",
    "delta1_derivative", "delta1_hat", "delta2", "divisors", "ergodic_rate", "eta",
    "gain_adjusted_mtc", "hmax_ccdf", "lambda_c", "laplace_derivatives",
    "laplace_interference", "mean_hmax", "mean_interference", "mean_lambda_c",
    "mean_lambda_c_upper", "mean_log_interference", "mgf_interference", "mtc",
    "multihop_closed_form_max_intensity", "optimize_tessellation", "outage_probability",
    "psi_derivative", "rate_bounds", "rho", "solve_max_intensity",
]
