"""
Tests for the log-moment summaries and the two method-of-moments estimators.

Population log-moments of known parameters are fed back to the estimators,
which must return the parameters they came from.
"""
import math

import numpy as np
import pytest

from modules.dist import GenIIParams, GenIParams, genml_sample, ssml_sample
from modules.estimate import (
    EstimationResult,
    LogMomentSummary,
    estimate_from_samples,
    estimate_gen1,
    estimate_gen2,
    gen1_log_moments,
    gen2_log_moments,
    log_moment_summary,
    population_log_moments,
)
from modules.specfun import CONSTANTS
from modules.utils import DomainError, NoSolutionError


def assert_params_close(fitted, truth, rtol):
    np.testing.assert_allclose(
        list(fitted.as_dict().values()), list(truth.as_dict().values()), rtol=rtol
    )


class TestSummaries:

    def test_sample_log_moments(self):
        e = math.e
        summary = log_moment_summary([e, e, e * e, e * e])
        assert summary.n == 4
        assert summary.mean_log == pytest.approx(1.5)
        assert summary.var_log == pytest.approx(0.25)
        assert summary.mu3_log == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("c", [2.0, 1.5, 0.1, 3.7])
    @pytest.mark.parametrize("n", [5, 10])
    def test_constant_sample_has_zero_variance(self, c, n):
        summary = log_moment_summary([c] * n)
        assert summary.var_log == 0.0
        assert summary.mu3_log == 0.0
        assert summary.mean_log == math.log(c)

    @pytest.mark.parametrize("samples", [[1.0, 2.0], [1.0, 0.0, 2.0], [1.0, -3.0, 2.0]])
    def test_rejects_samples(self, samples):
        with pytest.raises(DomainError):
            log_moment_summary(samples)

    def test_rejects_negative_variance(self):
        with pytest.raises(DomainError):
            LogMomentSummary(10, 0.0, -1.0, 0.0)

    def test_exponential_population_moments(self):
        """ln of a unit exponential: mean -eta, variance pi^2/6, mu3 -2 zeta(3)."""
        for summary in (
            gen1_log_moments(GenIParams(1.0, 1.0, 1.0)),
            gen2_log_moments(GenIIParams(1.0, 1.0, 1.0)),
        ):
            assert summary.mean_log == pytest.approx(-CONSTANTS.euler_gamma, abs=1e-10)
            assert summary.var_log == pytest.approx(CONSTANTS.pi_sq_over6, abs=1e-10)
            assert summary.mu3_log == pytest.approx(-2.0 * CONSTANTS.zeta3, abs=1e-10)
            assert summary.n is None

    def test_laws_agree_at_gamma_equal_nu(self):
        first = gen1_log_moments(GenIParams(0.6, 1.0, 0.8))
        second = gen2_log_moments(GenIIParams(0.6, 0.6, 0.8))
        np.testing.assert_allclose(
            [first.mean_log, first.var_log, first.mu3_log],
            [second.mean_log, second.var_log, second.mu3_log],
            rtol=1e-10,
        )

    def test_dispatch_on_parameter_type(self):
        p = GenIIParams(0.5, -1.0, 2.0)
        assert population_log_moments(p) == gen2_log_moments(p)
        with pytest.raises(DomainError):
            population_log_moments((0.5, 1.0, 1.0))


class TestGenI:

    def test_round_trip(self, gen1_params):
        result = estimate_gen1(gen1_log_moments(gen1_params))
        assert_params_close(result.params, gen1_params, rtol=1e-8)
        assert abs(result.residuals["variance"]) < 1e-10
        assert abs(result.residuals["skewness"]) < 1e-10

    def test_diagnostics(self):
        result = estimate_gen1(gen1_log_moments(GenIParams(0.7, 1.5, 1.0)))
        assert result.diagnostics["roots"]
        assert result.diagnostics["function_calls"] > 0
        assert 0.0 < result.diagnostics["nu_min"] < 0.7
        assert not result.clamped

    def test_skewness_beyond_reach_clamps_nu(self):
        result = estimate_gen1(LogMomentSummary(100, 0.0, 2.0, -50.0))
        assert result.params.nu == 1.0
        assert result.diagnostics["boundary"]["nu"]
        assert result.clamped

    def test_unattainable_skewness(self):
        with pytest.raises(NoSolutionError) as info:
            estimate_gen1(LogMomentSummary(100, 0.0, 2.0, 1e6))
        assert "mu3_attainable" in info.value.diagnostics

    def test_zero_variance(self):
        with pytest.raises(NoSolutionError):
            estimate_gen1(LogMomentSummary(5, 0.7, 0.0, 0.0))


class TestGenII:

    def test_round_trip(self, gen2_params):
        result = estimate_gen2(gen2_log_moments(gen2_params))
        assert_params_close(result.params, gen2_params, rtol=1e-8)
        assert result.residual_norm() < 1e-10

    def test_no_iterations(self):
        result = estimate_gen2(gen2_log_moments(GenIIParams(0.5, -0.5, 1.0)))
        assert result.diagnostics["iterations"] == 0
        assert not result.diagnostics["boundary"]["nu"]

    def test_variance_asking_for_nu_above_one(self):
        """A log-variance below the nu = 1 curve clamps nu; gamma still matches mu3."""
        exact = gen2_log_moments(GenIIParams(1.0, 2.0, 1.0))
        squeezed = LogMomentSummary(None, exact.mean_log, 0.8 * exact.var_log, exact.mu3_log)
        result = estimate_gen2(squeezed)
        assert result.params.nu == 1.0
        assert result.clamped
        assert result.params.gamma_exp == pytest.approx(2.0, rel=1e-12)

    def test_zero_skewness(self):
        with pytest.raises(NoSolutionError):
            estimate_gen2(LogMomentSummary(100, 0.0, 1.0, 0.0))


class TestFromSamples:

    def test_unknown_model(self):
        with pytest.raises(DomainError):
            estimate_from_samples("gen3", [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("family", ["gen1", "gen2"])
    @pytest.mark.parametrize("c", [1.5, 0.1, 3.7])
    def test_constant_sample(self, family, c):
        with pytest.raises(NoSolutionError):
            estimate_from_samples(family, [c] * 10)

    def test_result_type(self, stream):
        samples = genml_sample(GenIParams(0.8, 1.0, 1.0), stream(21), 2000)
        assert isinstance(estimate_from_samples("gen1", samples), EstimationResult)

    @pytest.mark.slow
    def test_gen1_large_sample(self, stream):
        truth = GenIParams(0.7, 1.5, 1.0)
        fitted = estimate_from_samples("gen1", genml_sample(truth, stream(22), 200_000)).params
        assert abs(fitted.nu - truth.nu) < 0.03

    @pytest.mark.slow
    def test_gen2_large_sample(self, stream):
        truth = GenIIParams(0.7, -0.5, 1.0)
        fitted = estimate_from_samples("gen2", ssml_sample(truth, stream(23), 200_000)).params
        assert abs(fitted.nu - truth.nu) < 0.03
        assert abs(fitted.gamma_exp - truth.gamma_exp) < 0.03
