"""Void-probability test of the cluster/Poisson duality.

Keeping one uniformly chosen member (parent or daughter) of every cluster
of a Poisson cluster process yields a PPP with the parent intensity, so the
chance that a set ``A`` holds none of the kept points is
``exp(-lambda_d |A|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..model import uniform_disk
from . import rng as streams
from .engine import run_blocks


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float
    name: str = "rect"

    @property
    def area(self):
        return max(self.x1 - self.x0, 0.0) * max(self.y1 - self.y0, 0.0)

    @property
    def bounds(self):
        return self.x0, self.y0, self.x1, self.y1

    def contains(self, p):
        return (p[:, 0] >= self.x0) & (p[:, 0] <= self.x1) & (p[:, 1] >= self.y0) & (p[:, 1] <= self.y1)


@dataclass(frozen=True)
class Disk:
    cx: float
    cy: float
    r: float
    name: str = "disk"

    @property
    def area(self):
        return math.pi * self.r**2

    @property
    def bounds(self):
        return self.cx - self.r, self.cy - self.r, self.cx + self.r, self.cy + self.r

    def contains(self, p):
        return np.hypot(p[:, 0] - self.cx, p[:, 1] - self.cy) <= self.r


@dataclass(frozen=True)
class VoidTestResult:
    name: str
    area: float
    target: float
    empirical: float
    std_err: float
    z: float
    p_value: float


def _void_block(task):
    (config, plan, test_sets), block, n = task
    rng = streams.stream(plan.master_seed, streams.TAG_DUALITY, block)
    lam, s, k = config.lambda_t, config.s, config.k
    voids = np.zeros(len(test_sets), dtype=np.int64)
    for _ in range(n):
        for j, region in enumerate(test_sets):
            if region.area == 0 or lam == 0:
                voids[j] += 1
                continue
            # parents farther than s from the set cannot place a member in it
            x0, y0, x1, y1 = region.bounds
            w, h = x1 - x0 + 2 * s, y1 - y0 + 2 * s
            n_par = rng.poisson(lam * w * h)
            parents = np.column_stack((x0 - s + w * rng.random(n_par),
                                       y0 - s + h * rng.random(n_par)))
            daughters = rng.poisson(k, n_par)
            keep_parent = rng.integers(0, daughters + 1) == 0
            offset = uniform_disk(rng, n_par, s)
            kept = parents + np.where(keep_parent[:, None], 0.0, offset)
            voids[j] += not np.any(region.contains(kept))
    return voids


def duality_void_test(config, plan, test_sets):
    """Compare empirical void probabilities with ``exp(-lambda_t |A|)``.

    ``config.lambda_t`` is the parent intensity and ``config.k`` the mean
    cluster size; each of ``plan.trials`` samples is an independent
    realisation. Returns one :class:`VoidTestResult` per set.
    """
    sets = tuple(test_sets)
    counts = run_blocks(_void_block, (config, plan, sets), plan.trials, plan.workers,
                        plan.block_size)
    voids = np.sum(counts, axis=0)
    out = []
    for region, hits in zip(sets, voids):
        target = math.exp(-config.lambda_t * region.area)
        p = hits / plan.trials
        se = math.sqrt(target * (1.0 - target) / plan.trials)
        if se > 0:
            z = (p - target) / se
        else:
            z = 0.0 if p == target else math.inf
        pval = float(2.0 * stats.norm.sf(abs(z)))
        out.append(VoidTestResult(region.name, region.area, target, float(p), se, float(z), pval))
    return out
