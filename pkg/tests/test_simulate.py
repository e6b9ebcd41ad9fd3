import math

import numpy as np
import pytest

from clustercast import analytic as an
from clustercast.errors import DomainError, NoSolutionError
from clustercast.model import NetworkConfig
from clustercast.simulate import (WORKERS_ENV, Disk, OutageEstimate, Rect, TrialPlan,
                                  default_workers, duality_void_test,
                                  estimate_connection_profile, estimate_laplace,
                                  estimate_max_intensity, estimate_mean_interference,
                                  estimate_outage, estimate_rate, sample_interference,
                                  simulate_multihop_outage)
from clustercast.simulate.engine import blocks
from clustercast.simulate.rng import stream


def cfg(**kw):
    base = dict(lambda_t=0.01, lambda_r=0.1, s=5.0, alpha=4.0, beta=1.0)
    base.update(kw)
    return NetworkConfig(**base)


def zscore(est, want):
    return (est.p_hat - want) / math.sqrt(want * (1 - want) / est.trials)


class TestPlumbing:
    def test_plan_validation(self):
        with pytest.raises(DomainError):
            TrialPlan(trials=0)
        with pytest.raises(DomainError):
            TrialPlan(interferer_refresh="never")
        with pytest.raises(DomainError):
            TrialPlan(interference_field="global")
        assert TrialPlan().resample_interferers_per_slot
        assert not TrialPlan(interferer_refresh="slot").resample_interferers_per_slot

    def test_blocks_cover_trials(self):
        assert blocks(1200, 500) == [(0, 500), (1, 500), (2, 200)]
        assert sum(n for _, n in blocks(7, 3)) == 7

    def test_streams_are_keyed(self):
        a = stream(1, 2, 3).random(4)
        assert np.array_equal(a, stream(1, 2, 3).random(4))
        assert not np.array_equal(a, stream(1, 2, 4).random(4))
        assert not np.array_equal(a, stream(2, 2, 3).random(4))

    def test_default_workers(self, monkeypatch):
        monkeypatch.delenv(WORKERS_ENV, raising=False)
        assert default_workers() == 1
        monkeypatch.setenv(WORKERS_ENV, "3")
        assert default_workers() == 3
        monkeypatch.setenv(WORKERS_ENV, "zero")
        with pytest.raises(DomainError):
            default_workers()

    def test_standard_error(self):
        est = OutageEstimate.from_counts(250, 1000)
        assert est.std_err == pytest.approx(math.sqrt(0.25 * 0.75 / 1000))
        assert est.ci95[0] < 0.25 < est.ci95[1]


class TestOutageEstimator:
    def test_no_interferers_no_outage(self):
        assert estimate_outage(cfg(lambda_t=0.0), TrialPlan(trials=2000)).p_hat == 0.0
        assert simulate_multihop_outage(cfg(lambda_t=0.0, tau=4, v=2),
                                        TrialPlan(trials=2000)).p_hat == 0.0

    def test_no_receivers_no_outage(self):
        assert estimate_outage(cfg(lambda_r=0.0), TrialPlan(trials=2000)).p_hat == 0.0

    def test_worker_count_does_not_change_result(self):
        c = cfg(tau=2)
        a = estimate_outage(c, TrialPlan(master_seed=9, trials=3000, worker_count=1))
        b = estimate_outage(c, TrialPlan(master_seed=9, trials=3000, worker_count=3))
        assert a == b
        c = cfg(tau=4, v=2)
        a = simulate_multihop_outage(c, TrialPlan(master_seed=9, trials=3000, worker_count=1))
        b = simulate_multihop_outage(c, TrialPlan(master_seed=9, trials=3000, worker_count=2))
        assert a == b

    def test_seed_changes_result(self):
        c = cfg(tau=2, lambda_t=0.02)
        a = estimate_outage(c, TrialPlan(master_seed=1, trials=3000))
        b = estimate_outage(c, TrialPlan(master_seed=2, trials=3000))
        assert a.p_hat != b.p_hat

    @pytest.mark.parametrize("tau", [1, 3])
    def test_matches_analysis(self, tau):
        c = cfg(tau=tau)
        lam = an.solve_max_intensity(c, epsilon=0.2)
        est = estimate_outage(c.replace(lambda_t=lam), TrialPlan(master_seed=4, trials=20_000))
        assert abs(zscore(est, 0.2)) < 4

    def test_frozen_field_raises_outage(self):
        c = cfg(tau=4, lambda_t=0.02)
        fresh = estimate_outage(c, TrialPlan(master_seed=5, trials=20_000))
        frozen = estimate_outage(c, TrialPlan(master_seed=5, trials=20_000,
                                              interferer_refresh="trial"))
        se = math.hypot(fresh.std_err, frozen.std_err)
        assert frozen.p_hat - fresh.p_hat > 4 * se

    def test_single_region_multihop_matches_single_hop(self):
        c = cfg(tau=2, lambda_t=0.02)
        a = estimate_outage(c, TrialPlan(master_seed=6, trials=20_000))
        b = simulate_multihop_outage(c, TrialPlan(master_seed=7, trials=20_000))
        assert abs(a.p_hat - b.p_hat) < 4 * math.hypot(a.std_err, b.std_err)

    def test_relaying_helps_large_cluster(self):
        c = cfg(s=10.0, lambda_r=0.2, alpha=3.0, beta=2.0, tau=20, lambda_t=2e-4)
        plan = TrialPlan(master_seed=8, trials=2000, interferer_refresh="slot")
        single = simulate_multihop_outage(c, plan)
        multi = simulate_multihop_outage(c.replace(v=5), plan)
        assert multi.p_hat < single.p_hat


class TestConnectionProfile:
    @pytest.mark.parametrize("m", [1, 2])
    def test_matches_analysis(self, m):
        c = cfg(m=m, tau=2, lambda_t=0.05)
        radii = [1.0, 2.0, 3.5, 5.0]
        pts = estimate_connection_profile(c, TrialPlan(master_seed=m, trials=20_000), radii)
        for pt in pts:
            want = an.lambda_c(pt.r, c.tau, c) / c.lambda_r
            assert abs(pt.p_connect - want) < 4 * math.sqrt(want * (1 - want) / 20_000)

    def test_radius_domain(self):
        with pytest.raises(DomainError):
            estimate_connection_profile(cfg(), TrialPlan(trials=10), [0.5])


class TestInterference:
    def test_campbell_mean(self):
        c = cfg(lambda_t=0.01, alpha=3.0)
        est = estimate_mean_interference(c, TrialPlan(master_seed=3, trials=100_000))
        assert abs(est.mean - an.mean_interference(0.01, 3.0)) < 4 * est.std_err

    def test_laplace_without_tail(self):
        c = cfg(lambda_t=0.05, alpha=3.0, m=2, window_radius=12.0)
        est = estimate_laplace(c, TrialPlan(master_seed=3, trials=50_000,
                                            tail_compensation=False), 2.0)
        want = an.laplace_interference(2.0, 0.05, 12.0, 2, 3.0)
        assert abs(est.mean - want) < 4 * est.std_err

    def test_draws_nonnegative_and_reproducible(self):
        c = cfg()
        a = sample_interference(c, np.random.default_rng(1), 100)
        b = sample_interference(c, np.random.default_rng(1), 100)
        assert np.array_equal(a, b) and np.all(a >= 0)
        assert np.all(sample_interference(c, np.random.default_rng(1), 5, lambda_t=0.0,
                                          tail_compensation=False) == 0)


class TestRate:
    def test_matches_analysis(self):
        c = cfg(alpha=3.0, s=3.0, tau=3, lambda_t=0.01)
        est = estimate_rate(c, TrialPlan(master_seed=2, trials=40_000))
        assert abs(est.mean - an.ergodic_rate(0.01, c)) < 4 * est.std_err

    def test_monotone(self):
        plan = TrialPlan(master_seed=2, trials=5000)
        c = cfg(alpha=3.0, tau=1, lambda_t=0.01)
        assert estimate_rate(c.replace(tau=4), plan).mean > estimate_rate(c, plan).mean
        assert estimate_rate(c.replace(lambda_t=0.1), plan).mean < estimate_rate(c, plan).mean

    def test_needs_interferers(self):
        with pytest.raises(DomainError):
            estimate_rate(cfg(lambda_t=0.0), TrialPlan(trials=10))


class TestDuality:
    def test_trivial_sets(self):
        res = duality_void_test(cfg(lambda_t=0.0), TrialPlan(trials=50),
                                [Rect(0, 0, 1, 1, "unit")])
        assert res[0].empirical == 1.0 and res[0].z == 0.0
        res = duality_void_test(cfg(), TrialPlan(trials=50), [Rect(0, 0, 0, 1, "flat")])
        assert res[0].target == 1.0 and res[0].empirical == 1.0

    def test_void_probabilities(self):
        c = cfg(lambda_t=0.05, lambda_r=0.1, s=3.0)
        sets = [Rect(0, 0, 4, 4, "square"), Disk(1, -1, 2, "disk")]
        for r in duality_void_test(c, TrialPlan(master_seed=11, trials=4000), sets):
            assert abs(r.z) < 4
            assert r.target == pytest.approx(math.exp(-0.05 * r.area))


class TestIntensity:
    def test_reproducible_and_bracketed(self):
        c = cfg(alpha=3.0, beta=2.0, tau=3)
        plan = TrialPlan(master_seed=42, trials=8000)
        a = estimate_max_intensity(c, plan)
        b = estimate_max_intensity(c, plan)
        assert a == b
        assert a.ci_low <= a.lambda_bar <= a.ci_high
        assert a.trials_used == sum(h[1] for h in a.history)

    def test_matches_analysis(self):
        c = cfg(alpha=3.0, beta=2.0, tau=3, s=5.0, lambda_r=0.1)
        est = estimate_max_intensity(c, TrialPlan(master_seed=42, trials=10_000))
        assert est.lambda_bar == pytest.approx(an.solve_max_intensity(c), rel=0.1)

    def test_unbracketed(self):
        c = cfg(alpha=3.0, beta=2.0, lambda_r=0.01, s=2.0)
        with pytest.raises(NoSolutionError):
            estimate_max_intensity(c, TrialPlan(trials=1000), hi_limit=1e-2)
