"""Stochastic bisection for the maximum contention intensity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import NoSolutionError
from .estimators import estimate_outage, simulate_multihop_outage

START_TRIALS = 1000


@dataclass(frozen=True)
class IntensityEstimate:
    """Root of simulated outage = epsilon.

    ``ci_low`` is the largest intensity whose outage was decisively below
    epsilon and ``ci_high`` the smallest decisively above; ``lambda_bar`` is
    their geometric mean unless a point was reached where the outage CI
    straddles epsilon within the width limit, in which case it is that point.
    """

    lambda_bar: float
    ci_low: float
    ci_high: float
    evaluations: int
    trials_used: int
    history: tuple = field(default=(), repr=False)


def _classify(outage_fn, config, plan, lam, eps, log):
    """-1 below epsilon, +1 above, 0 undecided; trials escalate x4 up to ``plan.trials``."""
    n = min(START_TRIALS, plan.trials)
    while True:
        est = outage_fn(config.replace(lambda_t=lam), plan.replace(trials=n))
        log.append((lam, n, est.p_hat, est.std_err))
        lo, hi = est.ci95
        if hi < eps:
            return -1
        if lo > eps:
            return 1
        if hi - lo < 0.1 * eps or n >= plan.trials:
            return 0
        n = min(4 * n, plan.trials)


def estimate_max_intensity(config, plan, start=1e-3, rel_tol=0.02, max_steps=40,
                           lo_limit=1e-12, hi_limit=1e2, multihop=None):
    """Bisect on ``log lambda_t`` until the bracket is within ``rel_tol``.

    Every evaluation reuses ``plan.master_seed`` so neighbouring intensities
    see common random numbers. ``multihop`` defaults to ``config.v > 1``.
    """
    if multihop is None:
        multihop = config.v > 1
    outage_fn = simulate_multihop_outage if multihop else estimate_outage
    eps = config.epsilon
    log = []

    def classify(lam):
        return _classify(outage_fn, config, plan, lam, eps, log)

    lo = hi = None
    lam = start
    mid_hit = None
    # grow the bracket by factors of 10 from the starting guess
    while lo is None or hi is None:
        if len(log) > max_steps or not lo_limit <= lam <= hi_limit:
            raise NoSolutionError(f"could not bracket the root near lambda_t={lam:g}")
        side = classify(lam)
        if side < 0:
            lo = lam
            lam = lam * 10.0 if hi is None else lam
        elif side > 0:
            hi = lam
            lam = lam / 10.0 if lo is None else lam
        else:
            mid_hit = lam
            break
    if mid_hit is None:
        for _ in range(max_steps):
            if hi / lo <= 1.0 + rel_tol:
                break
            mid = math.sqrt(lo * hi)
            side = classify(mid)
            if side < 0:
                lo = mid
            elif side > 0:
                hi = mid
            else:
                mid_hit = mid
                break
    if mid_hit is not None:
        # narrow the CI around an undecided point without moving the estimate
        lo, hi = _refine_sides(classify, mid_hit, lo, hi, rel_tol, max_steps)
        root = mid_hit
    else:
        root = math.sqrt(lo * hi)
    return IntensityEstimate(root, lo, hi, len(log), sum(e[1] for e in log), tuple(log))


def _refine_sides(classify, mid, lo, hi, rel_tol, max_steps):
    """Tighten the bracket with decisive points stepping outward from ``mid``."""
    step = 1.0 + 4.0 * rel_tol
    lam = mid / step
    for _ in range(max_steps):
        if lo is not None and lam <= lo:
            break
        if classify(lam) < 0:
            lo = lam
            break
        lam /= step
    lam = mid * step
    for _ in range(max_steps):
        if hi is not None and lam >= hi:
            break
        if classify(lam) > 0:
            hi = lam
            break
        lam *= step
    if lo is None or hi is None:
        raise NoSolutionError("outage estimate never separated from epsilon")
    return lo, hi
