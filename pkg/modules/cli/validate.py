"""Numerical self-checks behind ``main.py validate``.

Each check compares one code path against an independent one (a closed
form, a quadrature, a different series) and passes when the discrepancy is
within its tolerance.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from modules.dist import (
    GenIIParams,
    GenIParams,
    RngStream,
    genml_cdf,
    genml_lt,
    genml_pdf,
    genml_pdf_integral,
    genml_sample,
    ml_pdf_integral_oracle,
    ssml_cdf,
    ssml_pdf_integral,
    ssml_sample,
)
from modules.process import (
    fpp_state_pmf,
    fpp_state_pmf_series,
    mean_count,
    product_identity,
    state_pmf,
    state_prob,
    volterra_rhs,
)
from modules.specfun import digamma, ml, polygamma
from modules.utils import DomainError, get_logger

logger = get_logger("validate")

KS_SAMPLES = 10_000
KS_CRITICAL = 1.63  # alpha = 0.01, divided by sqrt(n)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one self-check.

    Attributes:
        suite (str): "specfun", "dist" or "process".
        name (str): What was compared.
        error (float): Largest discrepancy seen.
        tolerance (float): Largest discrepancy allowed.
    """

    suite: str
    name: str
    error: float
    tolerance: float

    @property
    def passed(self):
        return math.isfinite(self.error) and self.error <= self.tolerance


def _check(suite, name, error, tolerance):
    result = CheckResult(suite, name, float(error), tolerance)
    log = logger.info if result.passed else logger.warning
    log("%s/%s: error %.3g (tolerance %.3g) %s", suite, name, result.error, tolerance,
        "ok" if result.passed else "FAILED")
    return result


# =============================================================================
# SPECIAL FUNCTIONS
# =============================================================================


def specfun_checks():
    z = np.linspace(-50.0, 0.0, 1000)
    e1 = np.array([ml(1.0, 1.0, 1.0, v) for v in z])
    yield _check("specfun", "E_1(z) = exp(z) on [-50, 0]", np.max(np.abs(e1 / np.exp(z) - 1.0)), 1e-12)

    x = np.linspace(0.0, 5.0, 101)
    e2 = np.array([ml(2.0, 1.0, 1.0, -v * v) for v in x])
    yield _check("specfun", "E_2(-x^2) = cos(x) on [0, 5]", np.max(np.abs(e2 - np.cos(x))), 1e-12)

    worst = 0.0
    for beta in (0.3, 0.7, 1.0, 1.5, 2.0):
        for gamma in (0.5, 1.0, 2.0, 3.5):
            for xi in (0.0, 0.5, 1.0, 2.0, 3.0):
                worst = max(worst, abs(ml(beta, gamma, xi, 0.0) - special.rgamma(gamma)))
    yield _check("specfun", "E(0) = 1 / Gamma(gamma)", worst, 1e-14)

    tau = np.logspace(-3.0, 3.0, 200)
    yield _check(
        "specfun", "digamma against scipy",
        np.max(np.abs(digamma(tau) - special.digamma(tau)) / np.maximum(1.0, np.abs(special.digamma(tau)))),
        1e-10,
    )
    for n in (1, 2):
        reference = special.polygamma(n, tau)
        yield _check(
            "specfun", f"polygamma({n}) against scipy",
            np.max(np.abs(polygamma(n, tau) - reference) / np.maximum(1.0, np.abs(reference))),
            1e-9,
        )


# =============================================================================
# DISTRIBUTIONS
# =============================================================================


def _ks(samples, cdf):
    return stats.kstest(samples, cdf).statistic


def dist_checks(seed=0):
    worst = 0.0
    for nu in (0.3, 0.5, 0.8, 1.0):
        for delta in (0.5, 1.0, 2.0):
            worst = max(worst, abs(genml_pdf_integral(GenIParams(nu, delta, 1.0)) - 1.0))
    yield _check("dist", "generalized Mittag-Leffler density normalisation", worst, 1e-6)

    worst = 0.0
    for nu in (0.3, 0.5, 0.8, 1.0):
        for gamma in (-1.0, -0.5, 0.5, 1.0, 5.0):
            worst = max(worst, abs(ssml_pdf_integral(GenIIParams(nu, gamma, 1.0)) - 1.0))
    yield _check("dist", "stretched-squashed density normalisation", worst, 1e-6)

    worst = 0.0
    for nu, delta, lam, s in ((0.6, 1.5, 0.8, 2.0), (0.5, 1.0, 1.0, 1.0), (0.9, 0.5, 2.0, 0.5)):
        p = GenIParams(nu, delta, lam)
        quad = genml_pdf_integral(p, lambda t, s=s: math.exp(-s * t))
        worst = max(worst, abs(quad - genml_lt(p, s)))
    yield _check("dist", "Laplace transform against quadrature", worst, 1e-6)

    worst = 0.0
    for nu, lam, t in ((0.5, 1.0, 1.0), (0.9, 0.5, 2.0), (0.3, 1.0, 0.5), (0.7, 2.0, 3.0)):
        oracle = ml_pdf_integral_oracle(nu, lam, t)
        worst = max(worst, abs(oracle - genml_pdf(GenIParams(nu, 1.0, lam), t)))
    yield _check("dist", "integral representation of the density", worst, 1e-6)

    grid = [
        GenIParams(1.0, 1.0, 2.0), GenIParams(0.5, 0.5, 0.5), GenIParams(0.7, 2.0, 1.0),
        GenIParams(0.9, 1.5, 0.7), GenIParams(0.3, 1.0, 1.0), GenIParams(0.6, 0.8, 2.0),
        GenIIParams(0.5, 0.5, 1.0), GenIIParams(0.5, -0.5, 1.0), GenIIParams(0.7, 2.0, 0.5),
        GenIIParams(0.6, -0.6, 1.0), GenIIParams(1.0, 1.0, 1.0), GenIIParams(0.8, 5.0, 1.0),
    ]
    critical = KS_CRITICAL / math.sqrt(KS_SAMPLES)
    worst = 0.0
    for index, p in enumerate(grid):
        if isinstance(p, GenIParams):
            draw, cdf = genml_sample, (lambda x, p=p: genml_cdf(p, x))
        else:
            draw, cdf = ssml_sample, (lambda x, p=p: ssml_cdf(p, x))
        statistic = _ks(draw(p, RngStream(seed, (index, 0)), KS_SAMPLES), cdf)
        if statistic > critical:
            statistic = _ks(draw(p, RngStream(seed, (index, 1)), KS_SAMPLES), cdf)
        worst = max(worst, statistic)
    yield _check("dist", "sampler law (Kolmogorov-Smirnov)", worst, critical)


# =============================================================================
# COUNTING PROCESS
# =============================================================================


def process_checks():
    worst = 0.0
    for nu, delta in ((0.6, 0.8), (0.9, 1.5)):
        p = GenIParams(nu, delta, 1.0)
        for k in (1, 2, 3):
            for t in (0.5, 1.0, 2.0):
                worst = max(worst, abs(volterra_rhs(p, k, t) - state_prob(p, k, t)))
    yield _check("process", "Volterra recursion of the state probabilities", worst, 1e-6)

    worst = 0.0
    for alpha, beta, gamma, nu, sigma, a, x in (
        (0.5, 1.2, 0.7, 0.8, 1.3, -1.0, 1.0),
        (0.9, 0.6, 1.0, 1.5, 0.5, -0.5, 2.0),
    ):
        left, right = product_identity(alpha, beta, gamma, nu, sigma, a, x)
        worst = max(worst, abs(left - right))
    yield _check("process", "Prabhakar convolution identity", worst, 1e-6)

    worst = 0.0
    for nu in (0.5, 0.7, 0.9):
        for x in (0.1, 1.0, 5.0):
            for k in range(21):
                worst = max(worst, abs(fpp_state_pmf(nu, x, 1.0, k) - fpp_state_pmf_series(nu, x, 1.0, k)))
    yield _check("process", "fractional Poisson state probabilities, two forms", worst, 1e-10)

    p = GenIParams(0.6, 1.4, 0.7)
    yield _check("process", "mean count against the state probabilities",
                 abs(mean_count(p, 2.0) - state_pmf(p, 2.0).mean()), 1e-6)

    poisson = GenIParams(1.0, 1.0, 1.0)
    probs = state_pmf(poisson, 2.0).probs
    reference = stats.poisson.pmf(np.arange(probs.size), 2.0)
    yield _check("process", "Poisson collapse at nu = delta = 1", np.max(np.abs(probs - reference)), 1e-10)


SUITES = {"specfun": specfun_checks, "dist": dist_checks, "process": process_checks}


def run_suite(name="all"):
    """Run one suite, or all of them.

    Args:
        name (str): "specfun", "dist", "process" or "all".

    Returns:
        list[CheckResult]: The checks in suite order.
    """
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    if name not in SUITES:
        raise DomainError(f"suite must be one of {sorted(SUITES)} or 'all', got {name!r}")
    return list(SUITES[name]())
