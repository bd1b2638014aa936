import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from relmachine.numerics import (ConvergenceError, DomainError, Tolerance,
                                 generalized_tur_rhs, inverse_x_tanh_x,
                                 log_ratio_one_minus_exp, maximize_scalar,
                                 x_coth_half_x)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.abs_tol == 1e-12
        assert tol.rel_tol == 1e-12
        assert tol.max_iter == 200

    @pytest.mark.parametrize("kwargs", [
        {"abs_tol": 0.0}, {"abs_tol": -1e-3}, {"rel_tol": 0.0},
        {"rel_tol": float("nan")}, {"max_iter": 0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            Tolerance(**kwargs)


class TestLogRatioOneMinusExp:
    def test_identity_case(self):
        assert log_ratio_one_minus_exp(1.0, 1.0) == 0.0

    def test_positive_pair(self):
        # ln((1-e^-2)/(1-e^-1)) = ln(1 + 1/e)
        assert log_ratio_one_minus_exp(2.0, 1.0) == pytest.approx(
            0.3132616875182228, rel=1e-14)

    def test_negative_pair(self):
        # ln((1-e)/(1-e^2)) = -ln(1 + e): numerator and denominator both
        # negative, result finite and real
        assert log_ratio_one_minus_exp(-1.0, -2.0) == pytest.approx(
            -1.3132616875182228, rel=1e-14)

    @pytest.mark.parametrize("a,b", [(1.0, -1.0), (-2.0, 3.0), (0.0, 1.0),
                                     (1.0, 0.0), (math.inf, 1.0)])
    def test_domain_errors(self, a, b):
        with pytest.raises(DomainError):
            log_ratio_one_minus_exp(a, b)

    @given(st.floats(0.1, 30.0), st.floats(0.1, 30.0),
           st.sampled_from([1.0, -1.0]))
    def test_agrees_with_naive_in_safe_regime(self, a, b, sign):
        a, b = sign * a, sign * b
        naive = math.log((1.0 - math.exp(-a)) / (1.0 - math.exp(-b)))
        assert log_ratio_one_minus_exp(a, b) == pytest.approx(naive, rel=1e-12,
                                                              abs=1e-13)

    def test_finite_over_extreme_magnitudes(self):
        mags = [1e-12, 1e-9, 1e-4, 0.1, 1.0, 30.0, 100.0, 400.0, 700.0]
        for sign in (1.0, -1.0):
            for am in mags:
                for bm in mags:
                    value = log_ratio_one_minus_exp(sign * am, sign * bm)
                    assert math.isfinite(value), (sign, am, bm)

    def test_antisymmetric_in_argument_swap(self):
        assert log_ratio_one_minus_exp(3.0, 0.7) == pytest.approx(
            -log_ratio_one_minus_exp(0.7, 3.0), rel=1e-14)


class TestXCothHalfX:
    def test_removable_singularity(self):
        assert x_coth_half_x(0.0) == 2.0

    def test_reference_value(self):
        assert x_coth_half_x(0.5) == pytest.approx(2.0414940825367983, rel=1e-14)

    @given(st.floats(-50.0, 50.0))
    def test_even(self, x):
        assert x_coth_half_x(-x) == x_coth_half_x(x)

    def test_at_least_two_everywhere(self):
        xs = np.concatenate([np.geomspace(1e-8, 50.0, 300),
                             -np.geomspace(1e-8, 50.0, 300)])
        values = [x_coth_half_x(float(x)) for x in xs]
        assert min(values) >= 2.0
        # equality only at the origin
        assert all(v > 2.0 for v, x in zip(values, xs) if abs(x) > 1e-6)

    def test_series_switchover_continuity(self):
        # series and direct formulas agree to machine precision at the cutoff
        for x in (0.5e-4, 0.9999e-4, 1.0001e-4, 2e-4):
            series = 2.0 + x * x / 6.0 - x**4 / 360.0
            direct = x / math.tanh(0.5 * x)
            assert x_coth_half_x(x) == pytest.approx(series, rel=1e-15)
            assert series == pytest.approx(direct, rel=1e-13)


class TestInverseXTanhX:
    def test_zero(self):
        assert inverse_x_tanh_x(0.0) == 0.0

    def test_forward_value(self):
        y = 1.0 * math.tanh(1.0)  # 0.7615941559557649
        assert inverse_x_tanh_x(y) == pytest.approx(1.0, rel=1e-12)

    def test_reference_root(self):
        assert inverse_x_tanh_x(0.027150) == pytest.approx(
            0.16552188869827243, rel=1e-10)

    @pytest.mark.parametrize("x", [0.01, 0.1, 1.0, 5.0, 20.0])
    def test_round_trip(self, x):
        assert inverse_x_tanh_x(x * math.tanh(x)) == pytest.approx(x, rel=1e-10)

    def test_huge_argument(self):
        # x*tanh(x) ~ x far from the origin
        assert inverse_x_tanh_x(1e6) == pytest.approx(1e6, rel=1e-10)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            inverse_x_tanh_x(-1e-6)

    def test_max_iter_exhaustion(self):
        with pytest.raises(ConvergenceError):
            inverse_x_tanh_x(3.0, Tolerance(abs_tol=1e-300, rel_tol=1e-300,
                                            max_iter=3))


class TestGeneralizedTurRhs:
    def test_reference_value(self):
        assert generalized_tur_rhs(0.054300) == pytest.approx(
            36.16817169228084, rel=1e-10)

    def test_small_sigma_asymptote(self):
        # sigma * value -> 2 in the near-equilibrium limit
        for sigma in (1e-3, 1e-4, 1e-5):
            assert sigma * generalized_tur_rhs(sigma) == pytest.approx(2.0,
                                                                       rel=1e-2)

    def test_drops_below_one(self):
        assert generalized_tur_rhs(2.0) < 1.0

    def test_strictly_decreasing(self):
        sigmas = np.geomspace(1e-4, 50.0, 200)
        values = [generalized_tur_rhs(float(s)) for s in sigmas]
        assert all(x > y for x, y in zip(values, values[1:]))

    @pytest.mark.parametrize("sigma", [0.0, -1.0, math.nan])
    def test_domain(self, sigma):
        with pytest.raises(DomainError):
            generalized_tur_rhs(sigma)


class TestMaximizeScalar:
    # argmax resolution on a smooth peak is limited to ~sqrt(eps): past that,
    # function-value comparisons are pure rounding noise
    def test_quadratic_vertex(self):
        argmax, fmax = maximize_scalar(lambda x: -(x - 1.0) ** 2, 0.0, 2.0)
        assert argmax == pytest.approx(1.0, abs=1e-7)
        assert fmax == pytest.approx(0.0, abs=1e-14)

    def test_sine_peak(self):
        argmax, fmax = maximize_scalar(math.sin, 0.0, math.pi)
        assert argmax == pytest.approx(math.pi / 2, abs=1e-7)
        assert fmax == pytest.approx(1.0, abs=1e-12)

    def test_bad_bracket(self):
        with pytest.raises(DomainError):
            maximize_scalar(math.sin, 1.0, 1.0)
