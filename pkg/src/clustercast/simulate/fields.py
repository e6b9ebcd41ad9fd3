"""Interference fields seen by the receivers of a block of trials."""

from __future__ import annotations

import math

import numpy as np

from ..model import path_loss, tail_interference_mean, uniform_disk


class InterferenceSampler:
    """Draws interferer geometry and Nakagami marks for one configuration."""

    def __init__(self, config, lambda_t=None, tail_compensation=True):
        self.lam = config.lambda_t if lambda_t is None else float(lambda_t)
        self.alpha = config.alpha
        self.m = config.m
        self.radius = config.window(self.lam)
        self.tail = tail_interference_mean(self.lam, self.radius, self.alpha) \
            if tail_compensation else 0.0

    def local_losses(self, rng, n):
        """Path losses of independent receiver-centred fields for ``n`` receivers.

        Only interferers at distance >= 1 contribute, so the field is drawn
        on the annulus ``1 <= d <= radius``. Returns ``(owner, loss)``.
        """
        area = math.pi * (self.radius**2 - 1.0)
        counts = rng.poisson(self.lam * area, n)
        total = int(counts.sum())
        d2 = 1.0 + (self.radius**2 - 1.0) * rng.random(total)
        loss = d2 ** (-0.5 * self.alpha)
        return np.repeat(np.arange(n), counts), loss

    def positions(self, rng):
        n = rng.poisson(self.lam * math.pi * self.radius**2)
        return uniform_disk(rng, n, self.radius)

    def marks(self, rng, size):
        return rng.gamma(self.m, 1.0 / self.m, size=size)

    def sample(self, rng, size):
        """Total interference at ``size`` independent locations (one field each)."""
        owner, loss = self.local_losses(rng, size)
        h = self.marks(rng, len(loss))
        return np.bincount(owner, weights=h * loss, minlength=size) + self.tail


class BlockField:
    """Interference state for all receivers of a block of trials.

    ``redraw`` replaces interferer positions; ``sample`` returns one
    interference value per receiver with fresh fading marks.
    """

    def __init__(self, sampler, mode, receivers, trial_of, n_trials):
        self.sampler = sampler
        self.mode = mode
        self.receivers = receivers
        self.n = len(receivers)
        if mode == "shared":
            order = np.argsort(trial_of, kind="stable")
            bounds = np.searchsorted(trial_of[order], np.arange(n_trials + 1))
            self.groups = [order[bounds[j]:bounds[j + 1]] for j in range(n_trials)]
        self._state = None

    def redraw(self, rng):
        if self.mode == "independent":
            self._state = self.sampler.local_losses(rng, self.n)
            return
        state = []
        for idx in self.groups:
            x = self.sampler.positions(rng)
            if len(idx) == 0 or len(x) == 0:
                state.append((idx, None))
                continue
            y = self.receivers[idx]
            d = np.hypot(y[:, None, 0] - x[None, :, 0], y[:, None, 1] - x[None, :, 1])
            state.append((idx, path_loss(d, self.sampler.alpha, "interference")))
        self._state = state

    def sample(self, rng):
        s = self.sampler
        if self.mode == "independent":
            owner, loss = self._state
            h = s.marks(rng, len(loss))
            return np.bincount(owner, weights=h * loss, minlength=self.n) + s.tail
        out = np.full(self.n, s.tail)
        for idx, loss in self._state:
            if loss is not None:
                out[idx] += np.sum(s.marks(rng, loss.shape) * loss, axis=1)
        return out
