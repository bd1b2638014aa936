import cmath
import math

import numpy as np
import pytest

from relmachine import machine, stochastic
from relmachine.machine import EffectivePoint
from relmachine.numerics import DomainError

from conftest import WORKED, random_points


@pytest.fixture(scope="module")
def worked_dist():
    return stochastic.enumerate_distribution(WORKED)


class TestEnumeration:
    def test_normalization_and_structure(self, worked_dist):
        assert len(worked_dist.trajectories) == 4
        assert math.fsum(t.probability for t in worked_dist.trajectories) == \
            pytest.approx(1.0, abs=1e-15)
        still = [t for t in worked_dist.trajectories if t.n_a == t.n_b]
        assert len(still) == 2
        assert all(t.work == 0.0 and t.heat_hot == 0.0 for t in still)

    def test_infinite_temperature_uniform(self):
        p = EffectivePoint(1.0, 0.5, 1e-300, 1e-300)
        dist = stochastic.enumerate_distribution(p)
        for t in dist.trajectories:
            assert t.probability == pytest.approx(0.25, rel=1e-12)

    def test_worked_point_swap_probabilities(self, worked_dist):
        probs = {(t.n_a, t.n_b): t.probability for t in worked_dist.trajectories}
        assert probs[(0, 1)] == pytest.approx(0.16740509727844332, rel=1e-13)
        assert probs[(1, 0)] == pytest.approx(0.27600434470659363, rel=1e-13)

    def test_zero_temperature_single_outcome(self):
        p = EffectivePoint(1.0, 0.5, 800.0, 1600.0)
        dist = stochastic.enumerate_distribution(p)
        probs = {(t.n_a, t.n_b): t.probability for t in dist.trajectories}
        assert probs[(0, 0)] == pytest.approx(1.0, abs=1e-200)

    def test_trajectory_assignments(self, worked_dist):
        for t in worked_dist.trajectories:
            dn = t.n_b - t.n_a
            assert t.work == (WORKED.omega_A - WORKED.omega_B) * dn
            assert t.heat_hot == -WORKED.omega_A * dn
            assert t.entropy == dn * (WORKED.a - WORKED.b)
            assert t.heat_cold == -t.work - t.heat_hot


class TestMoments:
    def test_normalization_moment(self, worked_dist):
        assert stochastic.moments(worked_dist, 0, 0) == 1.0

    def test_first_moments_match_closed_forms(self, worked_dist):
        assert stochastic.moments(worked_dist, 1, 0) == pytest.approx(
            -0.054299623714075157, abs=1e-15)
        assert stochastic.moments(worked_dist, 0, 1) == pytest.approx(
            0.108599247428150315, abs=1e-15)

    def test_variance_matches_closed_form(self, worked_dist):
        var = (stochastic.moments(worked_dist, 0, 2)
               - stochastic.moments(worked_dist, 0, 1) ** 2)
        assert var == pytest.approx(0.43161564544307634, abs=1e-15)

    def test_order_cap(self, worked_dist):
        with pytest.raises(DomainError):
            stochastic.moments(worked_dist, 3, 2)
        with pytest.raises(DomainError):
            stochastic.moments(worked_dist, -1, 0)

    def test_oracle_agreement_on_grid(self):
        for p in random_points(300, seed=5):
            dist = stochastic.enumerate_distribution(p)
            w1 = stochastic.moments(dist, 1, 0)
            qh1 = stochastic.moments(dist, 0, 1)
            assert abs(w1 - machine.mean_work(p)) <= 1e-12
            assert abs(qh1 - machine.mean_heat_hot(p)) <= 1e-12
            var_w = stochastic.moments(dist, 2, 0) - w1 * w1
            var_qh = stochastic.moments(dist, 0, 2) - qh1 * qh1
            assert abs(var_w - machine.variance_work(p)) <= 1e-12
            assert abs(var_qh - machine.variance_heat_hot(p)) <= 1e-12


class TestCgf:
    def test_zero_at_origin(self, worked_dist):
        assert stochastic.cgf_analytic(WORKED, 0.0, 0.0) == 0.0
        assert abs(stochastic.cgf_numeric(worked_dist, 0.0, 0.0)) < 1e-15

    def test_entropy_identity(self):
        for p in random_points(50, seed=9, a_hi=6.0):
            value = stochastic.cgf_analytic(
                p, 1j * p.beta_eff_B, 1j * (p.beta_eff_B - p.beta_eff_A))
            assert abs(value) < 1e-12

    def test_exchange_symmetry(self):
        rng = np.random.default_rng(17)
        for p in random_points(20, seed=21, a_hi=5.0):
            chi_w = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
            chi_h = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
            direct = stochastic.cgf_analytic(p, chi_w, chi_h)
            mirrored = stochastic.cgf_analytic(
                p, 1j * p.beta_eff_B - chi_w,
                1j * (p.beta_eff_B - p.beta_eff_A) - chi_h)
            assert abs(direct - mirrored) < 1e-10

    def test_reference_values(self, worked_dist):
        z = stochastic.cgf_analytic(WORKED, 0.3, -0.7)
        assert z.real == pytest.approx(-0.15882746411742706, rel=1e-13)
        assert z.imag == pytest.approx(-0.09577915086249769, rel=1e-13)
        zc = stochastic.cgf_analytic(WORKED, 0.3 + 0.2j, -0.7 - 0.1j)
        assert zc.real == pytest.approx(-0.12507626343979848, rel=1e-13)
        assert zc.imag == pytest.approx(-0.17115476549023288, rel=1e-13)

    def test_numeric_analytic_agreement_grid(self, worked_dist):
        grid = np.linspace(-5.0, 5.0, 20)
        for cw in grid:
            for ch in grid:
                diff = (stochastic.cgf_numeric(worked_dist, cw, ch)
                        - stochastic.cgf_analytic(WORKED, cw, ch))
                assert abs(diff) < 1e-10

    def test_numeric_analytic_agreement_complex(self, worked_dist):
        rng = np.random.default_rng(23)
        for _ in range(40):
            cw = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
            ch = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
            diff = (stochastic.cgf_numeric(worked_dist, cw, ch)
                    - stochastic.cgf_analytic(WORKED, cw, ch))
            assert abs(diff) < 1e-12

    def test_second_derivative_recovers_moments(self, worked_dist):
        # 4th-order central stencil along chi_h
        h = 0.02
        def c(x):
            return stochastic.cgf_analytic(WORKED, 0.0, x)
        d2 = (-c(2 * h) + 16 * c(h) - 30 * c(0.0) + 16 * c(-h) - c(-2 * h)) \
            / (12 * h * h)
        var_qh = (stochastic.moments(worked_dist, 0, 2)
                  - stochastic.moments(worked_dist, 0, 1) ** 2)
        assert d2.real == pytest.approx(-var_qh, abs=1e-6)
        # same stencil on the characteristic function gives the raw moment
        def mgf(x):
            return cmath.exp(c(x))
        d2m = (-mgf(2 * h) + 16 * mgf(h) - 30 * mgf(0.0) + 16 * mgf(-h)
               - mgf(-2 * h)) / (12 * h * h)
        assert d2m.real == pytest.approx(-stochastic.moments(worked_dist, 0, 2),
                                         abs=1e-6)

    def test_mixed_cumulant_closure(self, worked_dist):
        # d^2 C / (d chi_w d chi_h) at 0 equals -Cov[W, Q_H]
        h = 0.02
        def c(w, q):
            return stochastic.cgf_analytic(WORKED, w, q)
        mixed = (c(h, h) - c(h, -h) - c(-h, h) + c(-h, -h)) / (4 * h * h)
        cov = (stochastic.moments(worked_dist, 1, 1)
               - stochastic.moments(worked_dist, 1, 0)
               * stochastic.moments(worked_dist, 0, 1))
        assert mixed.real == pytest.approx(-cov, abs=1e-5)


class TestFluctuationTheorems:
    def test_integral_ft_worked_point(self, worked_dist):
        assert stochastic.check_integral_ft(worked_dist) == pytest.approx(
            1.0, abs=1e-15)

    def test_integral_ft_degenerate(self):
        dist = stochastic.enumerate_distribution(EffectivePoint(1.0, 0.5, 0.5, 1.0))
        # sigma vanishes identically, so the average reduces to normalization
        assert all(t.entropy == 0.0 for t in dist.trajectories)
        assert stochastic.check_integral_ft(dist) == pytest.approx(1.0, abs=1e-15)

    def test_integral_ft_grid(self):
        worst = max(abs(stochastic.check_integral_ft(
            stochastic.enumerate_distribution(p)) - 1.0)
            for p in random_points(1000, seed=3))
        assert worst < 1e-13

    def test_exchange_ft_worked_point(self, worked_dist):
        # forward/reverse of the dn = +1 outcome: e^{a-b} = e^{-0.5}
        records = stochastic.check_exchange_ft(worked_dist)
        assert len(records) == 4
        for fwd, rev, entropy in records:
            assert fwd / rev == pytest.approx(math.exp(entropy), rel=1e-13)
        swap_up = records[1]  # outcome (0, 1)
        assert swap_up[0] / swap_up[1] == pytest.approx(math.exp(-0.5), rel=1e-13)

    def test_zero_current_outcomes_self_reverse(self, worked_dist):
        for fwd, rev, entropy in stochastic.check_exchange_ft(worked_dist):
            if entropy == 0.0:
                assert fwd == rev

    def test_exchange_ft_grid(self):
        for p in random_points(500, seed=31):
            for fwd, rev, entropy in stochastic.check_exchange_ft(
                    stochastic.enumerate_distribution(p)):
                if rev > 0.0:
                    assert fwd / rev == pytest.approx(math.exp(entropy),
                                                      rel=1e-13)

    def test_jensen_consistency(self):
        # <e^{-sigma}> = 1 with convexity forces <sigma> >= 0; both checked
        for p in random_points(200, seed=37):
            dist = stochastic.enumerate_distribution(p)
            assert stochastic.check_integral_ft(dist) == pytest.approx(
                1.0, abs=1e-13)
            mean_entropy = math.fsum(t.probability * t.entropy
                                     for t in dist.trajectories)
            assert mean_entropy >= -1e-15
