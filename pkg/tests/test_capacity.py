import math
import warnings

import numpy as np
import pytest
from scipy import integrate, special

from clustercast.analytic import (ScalingHypothesisWarning, capacity_gain,
                                  closed_form_max_intensity, convexity_certificate, divisors,
                                  ergodic_rate, eta, gain_adjusted_mtc, hmax_ccdf,
                                  laplace_interference, mean_hmax,
                                  mtc, multihop_closed_form_max_intensity,
                                  optimize_tessellation, rate_bounds)
from clustercast.errors import DomainError
from clustercast.model import NetworkConfig


def cfg(**kw):
    base = dict(lambda_t=0.01, lambda_r=0.1, s=5.0, alpha=4.0, beta=1.0)
    base.update(kw)
    return NetworkConfig(**base)


def gain_oracle(v, tau, k, eps):
    multi = k ** (-v / tau) * v ** (v / tau + 1) * (eps * (tau / v + 1)) ** (v / tau)
    single = k ** (-1 / tau) * (eps * (tau + 1)) ** (1 / tau)
    return 10 * math.log10(multi / single)


def quiet(fn, *args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScalingHypothesisWarning)
        return fn(*args)


class TestClosedForm:
    def test_eta_rayleigh_alpha4(self):
        assert eta(cfg()) == pytest.approx(4 / math.pi, rel=1e-13)

    def test_eta_smaller_cutoff_is_smaller(self):
        assert eta(cfg(a_hat=0.5)) < eta(cfg())

    def test_single_hop_expression(self):
        c = cfg(lambda_r=1.0, s=10.0, tau=1, epsilon=0.1)
        want = (4 / math.pi) * (0.1 * 2) / c.k / (math.pi * 100)
        assert closed_form_max_intensity(c) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("tau", [1, 2, 5, 10])
    def test_receiver_doubling(self, tau):
        c = cfg(lambda_r=1.0, s=10.0, tau=tau)
        a = quiet(closed_form_max_intensity, c)
        b = quiet(closed_form_max_intensity, c.replace(lambda_r=2.0))
        assert b / a == pytest.approx(2 ** (-1 / tau), rel=1e-12)

    def test_v_equals_tau_reduces(self):
        c = cfg(lambda_r=1.0, s=10.0, tau=4, v=4, epsilon=0.1)
        want = eta(c) * 2 * 0.1 * 16 / c.k / (math.pi * 100)
        assert multihop_closed_form_max_intensity(c) == pytest.approx(want, rel=1e-12)

    def test_single_region_matches_single_hop(self):
        c = cfg(lambda_r=1.0, s=10.0, tau=3, v=1)
        assert quiet(multihop_closed_form_max_intensity, c) == pytest.approx(
            quiet(closed_form_max_intensity, c), rel=1e-14)

    @pytest.mark.parametrize("v", [1, 2, 5, 10])
    def test_slope_in_k(self, v):
        c = cfg(lambda_r=1.0, s=10.0, tau=10, v=v)
        ks = np.array([1.0, 4.0, 16.0])
        lams = [quiet(multihop_closed_form_max_intensity, c.replace(lambda_r=x)) for x in ks]
        slope = np.polyfit(np.log(ks), np.log(lams), 1)[0]
        assert slope == pytest.approx(-v / 10, abs=1e-12)

    def test_warnings(self):
        with pytest.warns(ScalingHypothesisWarning):
            closed_form_max_intensity(cfg(lambda_r=0.01, s=2.0, tau=5))
        with pytest.warns(ScalingHypothesisWarning):
            multihop_closed_form_max_intensity(cfg(lambda_r=0.01, s=2.0, tau=4, v=2))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            closed_form_max_intensity(cfg(lambda_r=1.0, s=10.0, tau=2))


class TestGain:
    def test_divisors(self):
        assert divisors(20) == [1, 2, 4, 5, 10, 20]
        assert divisors(1) == [1]

    @pytest.mark.parametrize("tau", [2, 6, 20])
    def test_against_oracle(self, tau):
        for v in divisors(tau):
            assert capacity_gain(v, tau, 62.8, 0.1) == pytest.approx(
                gain_oracle(v, tau, 62.8, 0.1), abs=1e-12)

    def test_single_region_is_zero(self):
        assert capacity_gain(1, 20, 62.8, 0.1) == 0.0

    def test_golden_row(self):
        gains = [capacity_gain(v, 20, 62.8, 0.1) for v in divisors(20)]
        assert gains == pytest.approx([0.0, 2.293, 3.923, 4.228, 4.134, 1.789], abs=1e-3)
        assert optimize_tessellation(20, 62.8, 0.1) == 5

    def test_unimodal(self):
        gains = np.array([capacity_gain(v, 20, 100.0, 0.1) for v in divisors(20)])
        peak = int(np.argmax(gains))
        assert np.all(np.diff(gains[: peak + 1]) > 0)
        assert np.all(np.diff(gains[peak:]) < 0)

    def test_expanded_form_does_not_vanish(self):
        # an expanded rewrite of the ratio that is easy to get wrong: it does not
        # vanish at v = 1, unlike the ratio of the two intensities
        tau, k, eps = 20, 62.8, 0.1

        def expanded(v):
            z = v / tau
            return 10 * (z * math.log10(tau * eps / k) + z * math.log10(1 + z)
                         + (2 + z) * math.log10(z) + 2 * math.log10(tau)
                         + math.log10(k / (eps * (1 + tau))) / tau)

        assert expanded(1) == pytest.approx(-10 / tau * math.log10(tau), abs=1e-12)
        assert capacity_gain(1, tau, k, eps) == 0.0
        for v in divisors(tau):
            assert capacity_gain(v, tau, k, eps) != pytest.approx(expanded(v), abs=1e-3)

    def test_certificate(self):
        for tau in (4, 20, 60):
            for v in divisors(tau):
                assert convexity_certificate(v, tau) > 1
        assert convexity_certificate(1, 1) == pytest.approx(2 / math.sqrt(3))

    def test_domain(self):
        with pytest.raises(DomainError):
            capacity_gain(3, 20, 62.8, 0.1)
        with pytest.raises(DomainError):
            capacity_gain(40, 20, 62.8, 0.1)
        with pytest.raises(DomainError):
            capacity_gain(2, 20, 62.8, 1.5)


class TestGainAdjusted:
    def test_factors(self):
        c = cfg(tau=1)
        assert gain_adjusted_mtc(c) == 1.0
        assert gain_adjusted_mtc(c, g_a=2.0) == 2.0
        assert gain_adjusted_mtc(c, g_s=16.0) == pytest.approx(4.0)
        assert gain_adjusted_mtc(c, g_v=2.0) == pytest.approx(4.0)
        assert gain_adjusted_mtc(cfg(tau=4), g_v=16.0) == pytest.approx(32.0)

    def test_rejects_losses(self):
        with pytest.raises(DomainError):
            gain_adjusted_mtc(cfg(), g_s=0.5)


class TestRate:
    def test_hmax_ccdf(self):
        # tau = 1, m = 1, alpha = 4: P[H > 1] = 1/e
        assert hmax_ccdf(2 / (4 - 2), 1, 1) == pytest.approx(math.exp(-1), rel=1e-14)
        assert hmax_ccdf(1.0, 1, 3) == pytest.approx(1 - (1 - math.exp(-1)) ** 3, rel=1e-14)

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("tau", [1, 4])
    def test_mean_hmax(self, m, tau):
        want = integrate.quad(lambda h: 1 - special.gammainc(m, m * h) ** tau, 0, np.inf)[0]
        assert mean_hmax(m, tau) == pytest.approx(want, rel=1e-8)
        assert mean_hmax(1, 3) == pytest.approx(1 + 1 / 2 + 1 / 3)

    @pytest.mark.parametrize("lam", [1e-3, 1e-2, 1e-1])
    @pytest.mark.parametrize("s", [2.0, 5.0, 10.0])
    @pytest.mark.parametrize("tau", [1, 4])
    def test_bounds_sandwich(self, lam, s, tau):
        c = cfg(alpha=3.0, beta=2.0, s=s, tau=tau)
        b = rate_bounds(lam, c)
        rate = ergodic_rate(lam, c)
        assert 0 <= b.lower <= rate <= b.upper

    def test_bounds_grow_as_interference_vanishes(self):
        c = cfg(alpha=3.0)
        lows = [rate_bounds(x, c).lower for x in (1e-1, 1e-2, 1e-3)]
        ups = [rate_bounds(x, c).upper for x in (1e-1, 1e-2, 1e-3)]
        assert lows == sorted(lows) and ups == sorted(ups)

    def test_rayleigh_rate_against_double_quadrature(self):
        # E[ln(1+X/I)] = int L_I(z) (1 - L_X(z)) / z dz, with 1 - L_X averaged
        # directly over the density of the largest of tau unit exponentials
        c = cfg(alpha=3.0, s=3.0, tau=3)
        lam, tau = 0.01, 3
        g = c.s**c.alpha

        def one_minus_lx(z):
            f = lambda h: (-math.expm1(-z * h / g) * tau * math.exp(-h)
                           * (1 - math.exp(-h)) ** (tau - 1))
            return integrate.quad(f, 0, np.inf, limit=200, epsabs=1e-15)[0]

        def f(u):
            z = math.exp(u)
            return laplace_interference(z, lam, math.inf, 1, c.alpha) * one_minus_lx(z)

        mid = math.log(g)
        want = integrate.quad(f, mid - 50, mid + 50, points=[mid, -math.log(lam)],
                              limit=400)[0] / math.log(2)
        assert ergodic_rate(lam, c) == pytest.approx(want, rel=1e-9)

    def test_rate_more_attempts_better(self):
        c = cfg(alpha=3.0)
        rates = [ergodic_rate(0.01, c.replace(tau=t)) for t in (1, 2, 4)]
        assert rates == sorted(rates)

    def test_nakagami_rate_between_bounds(self):
        c = cfg(alpha=3.0, m=2, tau=2)
        b = rate_bounds(0.01, c)
        assert b.lower <= ergodic_rate(0.01, c) <= b.upper

    def test_mtc(self):
        c = cfg(tau=4, epsilon=0.1)
        assert mtc(c, 0.02, 3.0) == pytest.approx(3.0 * 0.02 * 0.9 / 4)
        with pytest.raises(DomainError):
            mtc(c, -1.0, 1.0)
