"""Monte Carlo estimators for single-hop multicast."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..model import path_loss, tessellate, uniform_disk
from . import rng as streams
from .engine import run_blocks
from .fields import BlockField, InterferenceSampler
from .plan import ConnectionPoint, MeanEstimate, OutageEstimate, TrialPlan

__all__ = [
    "estimate_outage",
    "simulate_multihop_outage",
    "estimate_connection_profile",
    "estimate_rate",
    "estimate_mean_interference",
    "estimate_laplace",
    "sample_interference",
]


def _draw_cluster(rng, config, n_trials):
    """Receivers of ``n_trials`` independent clusters, flattened."""
    counts = rng.poisson(config.k, n_trials)
    trial_of = np.repeat(np.arange(n_trials), counts)
    return uniform_disk(rng, int(counts.sum()), config.s), trial_of


def _any_per_trial(mask, trial_of, n_trials):
    return np.bincount(trial_of, weights=mask, minlength=n_trials) > 0


def _single_hop_block(task):
    (config, plan), block, n = task
    rng = streams.stream(plan.master_seed, streams.TAG_OUTAGE, block)
    rx, trial_of = _draw_cluster(rng, config, n)
    sig = path_loss(np.hypot(rx[:, 0], rx[:, 1]), config.alpha, "desired")
    sampler = InterferenceSampler(config, tail_compensation=plan.tail_compensation)
    field = BlockField(sampler, plan.interference_field, rx, trial_of, n)
    connected = np.zeros(len(rx), dtype=bool)
    for t in range(config.tau):
        # with v = 1 a slot spans the whole trial
        if t == 0 or plan.interferer_refresh == "attempt":
            field.redraw(rng)
        interference = field.sample(rng)
        h = sampler.marks(rng, len(rx))
        connected |= h * sig >= config.beta * interference
    return int(np.count_nonzero(_any_per_trial(~connected, trial_of, n)))


def estimate_outage(config, plan):
    """Fraction of clusters with a receiver still unconnected after ``tau`` attempts.

    Empty clusters count as successes.
    """
    if not isinstance(plan, TrialPlan):
        raise TypeError("plan must be a TrialPlan")
    hits = run_blocks(_single_hop_block, (config, plan), plan.trials, plan.workers,
                      plan.block_size)
    return OutageEstimate.from_counts(sum(hits), plan.trials)


def _choose_relays(rng, candidates, trial_of, n_trials):
    """One uniformly chosen candidate index per trial (``-1`` if none)."""
    key = rng.random(len(candidates))
    idx = np.flatnonzero(candidates)
    chosen = np.full(n_trials, -1)
    if len(idx):
        order = np.lexsort((key[idx], trial_of[idx]))
        ranked = idx[order]
        tr = trial_of[ranked]
        last = np.r_[tr[1:] != tr[:-1], True]
        chosen[tr[last]] = ranked[last]
    return chosen


def _multihop_block(task):
    (config, plan), block, n = task
    rng = streams.stream(plan.master_seed, streams.TAG_MULTIHOP, block)
    v, per_slot = config.v, config.tau // config.v
    tess = tessellate(config.s, v)
    rx, trial_of = _draw_cluster(rng, config, n)
    region = tess.locate(rx)
    sampler = InterferenceSampler(config, tail_compensation=plan.tail_compensation)
    field = BlockField(sampler, plan.interference_field, rx, trial_of, n)
    tx = np.zeros((n, 2))
    holder = np.zeros(len(rx), dtype=bool)
    failed = np.zeros(n, dtype=bool)
    for i in range(v):
        for t in range(per_slot):
            fresh = (plan.interferer_refresh == "attempt"
                     or (plan.interferer_refresh == "slot" and t == 0)
                     or (i == 0 and t == 0))
            if fresh:
                field.redraw(rng)
            interference = field.sample(rng)
            h = sampler.marks(rng, len(rx))
            src = tx[trial_of]
            sig = path_loss(np.hypot(rx[:, 0] - src[:, 0], rx[:, 1] - src[:, 1]),
                            config.alpha, "desired")
            holder |= h * sig >= config.beta * interference
        failed |= _any_per_trial((region == i) & ~holder, trial_of, n)
        if i == v - 1:
            break
        nxt = region == i + 1
        has_next = _any_per_trial(nxt, trial_of, n)
        relay = _choose_relays(rng, nxt & holder, trial_of, n)
        # a non-empty next region nobody reached ends the trial in outage;
        # an empty one leaves the current transmitter in place
        failed |= has_next & (relay < 0)
        moved = relay >= 0
        tx[moved] = rx[relay[moved]]
    return int(np.count_nonzero(failed))


def simulate_multihop_outage(config, plan):
    """Outage of relay-assisted multicast over ``v`` equal-area regions.

    The current transmitter spends ``tau/v`` attempts on each region in
    turn. A slot fails if a receiver of the current region still lacks the
    packet or, before the last region, no receiver of a non-empty next
    region has it. Receivers that decoded an earlier transmission keep the
    packet. The next relay is drawn uniformly from next-region holders.
    """
    if config.tau % config.v:
        raise DomainError("v must divide tau")
    hits = run_blocks(_multihop_block, (config, plan), plan.trials, plan.workers,
                      plan.block_size)
    return OutageEstimate.from_counts(sum(hits), plan.trials)


def _profile_block(task):
    (config, plan, radii), block, n = task
    rng = streams.stream(plan.master_seed, streams.TAG_PROFILE, block)
    sampler = InterferenceSampler(config, tail_compensation=plan.tail_compensation)
    size = n * len(radii)
    sig = np.repeat(path_loss(np.asarray(radii), config.alpha, "desired"), n)
    connected = np.zeros(size, dtype=bool)
    state = None
    for t in range(config.tau):
        if state is None or plan.interferer_refresh == "attempt":
            state = sampler.local_losses(rng, size)
        owner, loss = state
        interference = np.bincount(owner, weights=sampler.marks(rng, len(loss)) * loss,
                                   minlength=size) + sampler.tail
        connected |= sampler.marks(rng, size) * sig >= config.beta * interference
    return connected.reshape(len(radii), n).sum(axis=1)


def estimate_connection_profile(config, plan, r_grid):
    """Connection frequency within ``tau`` attempts of probes pinned at each radius.

    Probes are passive: they neither interfere nor change the point process.
    """
    radii = [float(r) for r in r_grid]
    if any(not 1 <= r <= config.s for r in radii):
        raise DomainError("r_grid must lie in [1, s]")
    parts = run_blocks(_profile_block, (config, plan, tuple(radii)), plan.trials,
                       plan.workers, plan.block_size)
    total = np.sum(parts, axis=0)
    out = []
    for r, hits in zip(radii, total):
        est = OutageEstimate.from_counts(int(hits), plan.trials)
        out.append(ConnectionPoint(r, est.p_hat, est.std_err))
    return out


def _rate_block(task):
    (config, plan), block, n = task
    rng = streams.stream(plan.master_seed, streams.TAG_RATE, block)
    sampler = InterferenceSampler(config, tail_compensation=plan.tail_compensation)
    h_max = sampler.marks(rng, (n, config.tau)).max(axis=1)
    interference = sampler.sample(rng, n)
    vals = np.log2(1.0 + h_max * config.s**-config.alpha / interference)
    return float(vals.sum()), float(np.square(vals).sum())


def estimate_rate(config, plan):
    """Mean of ``log2(1 + H_max s^-alpha / I)`` at the cluster edge."""
    if not config.lambda_t > 0:
        raise DomainError("lambda_t must be positive")
    parts = run_blocks(_rate_block, (config, plan), plan.trials, plan.workers,
                       plan.block_size)
    return MeanEstimate.from_sums(sum(p[0] for p in parts), sum(p[1] for p in parts),
                                  plan.trials)


def sample_interference(config, rng, size, lambda_t=None, tail_compensation=True):
    """``size`` independent draws of the interference at a point."""
    return InterferenceSampler(config, lambda_t, tail_compensation).sample(rng, size)


def _functional_block(task):
    (config, plan, phi), block, n = task
    rng = streams.stream(plan.master_seed,
                         streams.TAG_CAMPBELL if phi is None else streams.TAG_LAPLACE, block)
    vals = sample_interference(config, rng, n, tail_compensation=plan.tail_compensation)
    if phi is not None:
        vals = np.exp(-phi * vals)
    return float(vals.sum()), float(np.square(vals).sum())


def estimate_mean_interference(config, plan):
    """Sample mean of the interference at a point (Campbell check)."""
    parts = run_blocks(_functional_block, (config, plan, None), plan.trials, plan.workers,
                       plan.block_size)
    return MeanEstimate.from_sums(sum(p[0] for p in parts), sum(p[1] for p in parts),
                                  plan.trials)


def estimate_laplace(config, plan, phi):
    """Sample mean of ``exp(-phi I)``."""
    if phi < 0 or math.isnan(phi):
        raise DomainError("phi must be nonnegative")
    parts = run_blocks(_functional_block, (config, plan, float(phi)), plan.trials,
                       plan.workers, plan.block_size)
    return MeanEstimate.from_sums(sum(p[0] for p in parts), sum(p[1] for p in parts),
                                  plan.trials)
