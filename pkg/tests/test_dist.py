"""
Tests for the waiting-time laws: densities, distribution functions,
transforms, fractional moments and samplers.
"""
import math

import numpy as np
import pytest
from scipy import integrate, special, stats

from modules import config
from modules.dist import (
    GenIIParams,
    GenIParams,
    RngStream,
    arrival_time_pdf,
    gamma_sample,
    genml_cdf,
    genml_fractional_moment,
    genml_lt,
    genml_pdf,
    genml_pdf_integral,
    genml_sample,
    genml_sf,
    half_line_quad,
    inverse_ml_pdf,
    ml_fractional_moment,
    ml_pdf_integral_oracle,
    positive_stable_sample,
    quad_checked,
    ssml_cdf,
    ssml_fractional_moment,
    ssml_lt_series,
    ssml_pdf,
    ssml_pdf_integral,
    ssml_sample,
)
from modules.utils import DomainError, QuadratureError

KS_N = 10_000
KS_CRITICAL = 1.63 / math.sqrt(KS_N)  # alpha = 0.01


def passes_ks(draw, cdf, seed):
    """KS test on stream (seed, 0); a miss is redrawn once from (seed, 1)."""
    for attempt in (0, 1):
        samples = draw(RngStream.substream(seed, attempt), KS_N)
        if stats.kstest(samples, cdf).statistic < KS_CRITICAL:
            return True
    return False


class TestParams:

    @pytest.mark.parametrize("nu, delta, lam", [(0.0, 1.0, 1.0), (1.2, 1.0, 1.0), (0.5, 0.0, 1.0), (0.5, 1.0, -1.0)])
    def test_gen1_rejects(self, nu, delta, lam):
        with pytest.raises(DomainError):
            GenIParams(nu, delta, lam)

    def test_gen2_rejects_zero_gamma(self):
        with pytest.raises(DomainError):
            GenIIParams(0.5, 0.0, 1.0)

    def test_as_dict_names(self):
        assert GenIParams(0.5, 2.0, 1.0).as_dict() == {"nu": 0.5, "delta": 2.0, "lambda": 1.0}
        assert GenIIParams(0.5, -1.0, 1.0).as_dict() == {"nu": 0.5, "gamma": -1.0, "lambda": 1.0}


class TestGeneralizedMittagLeffler:

    def test_exponential_density(self):
        np.testing.assert_allclose(genml_pdf(GenIParams(1.0, 1.0, 2.0), 0.5), 2.0 * math.exp(-1.0), rtol=1e-12)

    def test_gamma_density_at_nu_one(self):
        t = np.array([0.3, 1.0, 4.0])
        np.testing.assert_allclose(
            genml_pdf(GenIParams(1.0, 2.5, 1.5), t), stats.gamma.pdf(t, 2.5, scale=1.0 / 1.5), rtol=1e-10
        )

    def test_value_at_origin(self):
        assert genml_pdf(GenIParams(0.5, 2.0, 3.0), 0.0) == pytest.approx(3.0 ** 2.0)
        assert genml_pdf(GenIParams(0.5, 3.0, 3.0), 0.0) == 0.0
        with pytest.raises(DomainError):
            genml_pdf(GenIParams(0.5, 1.0, 1.0), 0.0)

    def test_exponential_cdf_and_survival(self):
        p = GenIParams(1.0, 1.0, 2.0)
        t = np.array([0.1, 1.0, 3.0])
        np.testing.assert_allclose(genml_cdf(p, t), -np.expm1(-2.0 * t), rtol=1e-12)
        np.testing.assert_allclose(genml_sf(p, t), np.exp(-2.0 * t), rtol=1e-12)

    def test_survival_complements_cdf(self):
        p = GenIParams(0.6, 1.0, 0.8)
        t = np.array([0.2, 1.5, 10.0])
        np.testing.assert_allclose(genml_sf(p, t) + genml_cdf(p, t), 1.0, atol=1e-12)

    def test_cdf_derivative_is_density(self):
        p = GenIParams(0.6, 1.5, 0.8)
        h = 1e-5
        for t in (0.4, 1.3, 3.0):
            derivative = (genml_cdf(p, t + h) - genml_cdf(p, t - h)) / (2.0 * h)
            assert abs(derivative - genml_pdf(p, t)) < 1e-5

    def test_laplace_transform(self):
        assert genml_lt(GenIParams(0.5, 1.0, 1.0), 1.0) == pytest.approx(0.5, abs=1e-14)
        assert genml_lt(GenIParams(0.7, 2.0, 1.0), 1e-12) == pytest.approx(1.0, abs=1e-6)

    def test_laplace_transform_against_quadrature(self):
        p = GenIParams(0.6, 1.5, 0.8)
        quad = genml_pdf_integral(p, lambda t: math.exp(-2.0 * t))
        assert abs(quad - genml_lt(p, 2.0)) < 1e-6

    @pytest.mark.parametrize("nu, delta", [(0.5, 0.5), (0.8, 2.0), (1.0, 1.0), (0.3, 1.0)])
    def test_normalisation(self, nu, delta):
        assert abs(genml_pdf_integral(GenIParams(nu, delta, 1.0)) - 1.0) < 1e-6

    def test_fractional_moment_exponential(self):
        moment = genml_fractional_moment(GenIParams(1.0, 1.0, 1.0), 0.5)
        assert moment == pytest.approx(special.gamma(1.5), rel=1e-12)

    def test_fractional_moment_mittag_leffler(self):
        expected = math.pi * special.gamma(1.5) / (special.gamma(0.5) * special.gamma(0.75))
        assert genml_fractional_moment(GenIParams(0.5, 1.0, 1.0), 0.25) == pytest.approx(expected, rel=1e-12)
        assert ml_fractional_moment(0.5, 1.0, 0.25) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("q", [0.0, 0.5, 0.7])
    def test_fractional_moment_order(self, q):
        with pytest.raises(DomainError):
            genml_fractional_moment(GenIParams(0.5, 1.0, 1.0), q)

    def test_erlang_arrival_time(self):
        value = arrival_time_pdf(GenIParams(1.0, 1.0, 1.0), 3, 2.0)
        np.testing.assert_allclose(value, 2.0 * math.exp(-2.0), rtol=1e-10)

    def test_arrival_time_is_shape_scaled(self):
        p = GenIParams(0.5, 0.5, 0.5)
        assert arrival_time_pdf(p, 4, 1.3) == pytest.approx(genml_pdf(GenIParams(0.5, 2.0, 0.5), 1.3))
        with pytest.raises(DomainError):
            arrival_time_pdf(p, 0, 1.0)

    @pytest.mark.parametrize("nu", [0.4, 0.5, 0.6, 0.7, 0.8])
    @pytest.mark.parametrize("lam, t", [(1.0, 1.0), (0.5, 2.0), (1.0, 0.5), (2.0, 0.8)])
    def test_integral_representation(self, nu, lam, t):
        oracle = ml_pdf_integral_oracle(nu, lam, t)
        assert abs(oracle - genml_pdf(GenIParams(nu, 1.0, lam), t)) < 1e-6

    def test_gamma_cdf_at_nu_one(self):
        t = np.array([10.0, 40.0, 80.0])
        np.testing.assert_allclose(genml_cdf(GenIParams(1.0, 40.0, 0.8), t), stats.gamma.cdf(t, 40.0, scale=1.25), rtol=1e-12)

    @pytest.mark.parametrize("t", [60.0, 150.0, 300.0])
    def test_large_shape_mixture_matches_series(self, monkeypatch, t):
        """From delta = mixture_shape on the cdf is a double integral; the series still covers delta = 20."""
        p = GenIParams(0.6, 20.0, 1.0)
        mixture = genml_cdf(p, t)
        monkeypatch.setitem(config.quadrature, "mixture_shape", math.inf)
        assert abs(mixture - genml_cdf(p, t)) < 1e-9

    @pytest.mark.parametrize("t", [1e4, 9e4, 1e6])
    def test_large_shape_half_order_against_levy_mixture(self, t):
        """nu = 1/2: V is Levy with P(V <= x) = erfc(1 / (2 sqrt x)), so F(t) = E erfc(U / (2 sqrt t))."""
        delta = 300.0
        expected, _ = integrate.quad(
            lambda u: stats.gamma.pdf(u, delta) * special.erfc(u / (2.0 * math.sqrt(t))),
            150.0, 500.0, points=[delta], epsabs=1e-13,
        )
        assert abs(genml_cdf(GenIParams(0.5, delta, 1.0), t) - expected) < 1e-9

    def test_integral_representation_needs_nu_below_one(self):
        with pytest.raises(DomainError):
            ml_pdf_integral_oracle(1.0, 1.0, 1.0)


class TestStretchedSquashed:

    def test_exponential_case(self):
        assert ssml_pdf(GenIIParams(1.0, 1.0, 1.0), 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_inverse_exponential(self):
        expected = 0.25 * math.exp(-0.5)
        assert inverse_ml_pdf(1.0, 1.0, 2.0) == pytest.approx(expected, rel=1e-12)
        assert ssml_pdf(GenIIParams(1.0, -1.0, 1.0), 2.0) == pytest.approx(expected, rel=1e-12)

    def test_gamma_equal_nu_is_mittag_leffler(self):
        x = np.array([0.2, 1.0, 5.0])
        np.testing.assert_allclose(
            ssml_pdf(GenIIParams(0.6, 0.6, 0.7), x), genml_pdf(GenIParams(0.6, 1.0, 0.7), x), rtol=1e-12
        )
        np.testing.assert_allclose(
            ssml_cdf(GenIIParams(0.6, 0.6, 0.7), x), genml_cdf(GenIParams(0.6, 1.0, 0.7), x), rtol=1e-10
        )

    @pytest.mark.parametrize("nu, gamma", [(0.5, 5.0), (0.5, -0.5), (0.8, -1.0), (0.3, 0.5), (1.0, 1.0)])
    def test_normalisation(self, nu, gamma):
        assert abs(ssml_pdf_integral(GenIIParams(nu, gamma, 1.0)) - 1.0) < 1e-6

    def test_cdf_limits(self):
        for gamma in (-0.5, 0.5):
            p = GenIIParams(0.5, gamma, 1.0)
            assert ssml_cdf(p, 1e-12) < 1e-3
            assert ssml_cdf(p, 1e12) > 1.0 - 1e-3

    def test_fractional_moment_consistency(self):
        assert ssml_fractional_moment(GenIIParams(0.7, 0.7, 0.5), 0.3) == pytest.approx(
            genml_fractional_moment(GenIParams(0.7, 1.0, 0.5), 0.3), rel=1e-12
        )
        assert ssml_fractional_moment(GenIIParams(1.0, 1.0, 1.0), 0.5) == pytest.approx(special.gamma(1.5))

    def test_fractional_moment_infinite(self):
        with pytest.raises(DomainError):
            ssml_fractional_moment(GenIIParams(0.5, 0.2, 1.0), 0.3)

    def test_laplace_series_geometric_case(self):
        assert ssml_lt_series(GenIIParams(0.5, 0.5, 1.0), 4.0) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_laplace_series_against_quadrature(self):
        p = GenIIParams(0.5, 1.0, 0.5)
        for s in (3.0, 20.0):
            quad = ssml_pdf_integral(p, lambda x: math.exp(-s * x))
            assert abs(ssml_lt_series(p, s) - quad) < 1e-6

    def test_laplace_series_vanishes_for_large_s(self):
        assert ssml_lt_series(GenIIParams(0.5, 0.8, 1.0), 1e8) < 1e-5

    def test_laplace_series_domain(self):
        with pytest.raises(DomainError):
            ssml_lt_series(GenIIParams(0.5, -0.5, 1.0), 4.0)
        with pytest.raises(DomainError):
            ssml_lt_series(GenIIParams(0.5, 0.5, 1.0), 1.0)

    def test_laplace_falls_back_to_quadrature(self):
        """gamma > nu at small s: the asymptotic series never gets small."""
        p = GenIIParams(0.5, 2.0, 1.0)
        value = ssml_lt_series(p, 0.5)
        assert 0.0 < value < 1.0
        assert value == pytest.approx(ssml_pdf_integral(p, lambda x: math.exp(-0.5 * x)), abs=1e-12)


class TestSamplers:

    def test_same_stream_same_draws(self, stream):
        p = GenIParams(0.6, 1.5, 0.8)
        np.testing.assert_array_equal(genml_sample(p, stream(7, 1), 100), genml_sample(p, stream(7, 1), 100))

    def test_different_streams_differ(self, stream):
        p = GenIParams(0.6, 1.5, 0.8)
        assert not np.array_equal(genml_sample(p, stream(7, 1), 10), genml_sample(p, stream(7, 2), 10))

    def test_scalar_draw(self, stream):
        assert isinstance(genml_sample(GenIParams(0.5, 1.0, 1.0), stream()), float)
        assert positive_stable_sample(1.0, stream()) == 1.0

    def test_exponential_special_case(self):
        p = GenIParams(1.0, 1.0, 2.0)
        assert passes_ks(lambda rng, n: genml_sample(p, rng, n), stats.expon(scale=0.5).cdf, 1)

    def test_gamma_sampler(self):
        assert passes_ks(lambda rng, n: gamma_sample(2.5, 1.5, rng, n), stats.gamma(2.5, scale=1.0 / 1.5).cdf, 2)

    def test_positive_stable_laplace_transform(self, stream):
        values = np.exp(-positive_stable_sample(0.6, stream(3), 100_000))
        se = values.std() / math.sqrt(values.size)
        assert abs(values.mean() - math.exp(-1.0)) < 3.0 * se

    @pytest.mark.parametrize(
        "p",
        [
            GenIParams(0.3, 1.0, 1.0),
            GenIParams(0.5, 0.5, 0.5),
            GenIParams(0.7, 2.0, 1.0),
            GenIParams(0.8, 0.5, 1.0),
            GenIParams(0.9, 1.0, 2.0),
            GenIParams(1.0, 2.0, 0.5),
        ],
    )
    def test_generalized_law(self, p):
        assert passes_ks(lambda rng, n: genml_sample(p, rng, n), lambda x: genml_cdf(p, x), 4)

    @pytest.mark.parametrize(
        "p",
        [
            GenIIParams(0.3, 1.0, 1.0),
            GenIIParams(0.5, -0.5, 1.0),
            GenIIParams(0.6, 0.6, 1.0),
            GenIIParams(0.7, 2.0, 0.5),
            GenIIParams(0.8, -1.0, 0.5),
            GenIIParams(1.0, 5.0, 1.0),
        ],
    )
    def test_stretched_squashed_law(self, p):
        assert passes_ks(lambda rng, n: ssml_sample(p, rng, n), lambda x: ssml_cdf(p, x), 5)

    @pytest.mark.slow
    def test_generalized_fractional_moment(self, stream):
        p = GenIParams(0.7, 2.0, 1.0)
        values = genml_sample(p, stream(6), 100_000) ** 0.3
        se = values.std() / math.sqrt(values.size)
        assert abs(values.mean() - genml_fractional_moment(p, 0.3)) < 3.0 * se

    @pytest.mark.slow
    def test_stretched_squashed_fractional_moment(self, stream):
        p = GenIIParams(0.7, 2.0, 0.5)
        values = ssml_sample(p, stream(7), 100_000) ** 0.4
        se = values.std() / math.sqrt(values.size)
        assert abs(values.mean() - ssml_fractional_moment(p, 0.4)) < 3.0 * se


class TestRngStream:

    def test_metadata(self):
        rng = RngStream.substream(11, 2, 100, 7)
        assert rng.metadata() == {"seed": 11, "stream": [2, 100, 7], "bit_generator": "Philox"}

    @pytest.mark.parametrize("seed", [-1, 1.5, 2 ** 64])
    def test_rejects_bad_seed(self, seed):
        with pytest.raises(DomainError):
            RngStream(seed)


class TestQuadrature:

    def test_half_line(self):
        assert half_line_quad(lambda x: math.exp(-x)) == pytest.approx(1.0, abs=1e-10)
        assert half_line_quad(lambda x: 1.0 / (1.0 + x) ** 2) == pytest.approx(1.0, abs=1e-9)

    def test_power_tail(self):
        """int_1^inf x^-1.5 dx = 2, integrated through the power-tail map."""
        value = half_line_quad(lambda x: 0.0 if x < 1.0 else x ** -1.5, split=1.0, tail_index=0.5)
        assert value == pytest.approx(2.0, abs=1e-8)

    def test_divergence_is_reported(self):
        with pytest.raises(QuadratureError):
            quad_checked(lambda x: 1.0 / x, 0.0, 1.0)
