"""Method-of-moments estimation for generalized Mittag-Leffler waiting times.

For fixed nu the variance equation

    sigma^2 = (pi^2 / 6)(1/nu^2 - 1) + psi1(delta) / nu^2

has exactly one solution delta(nu), since psi1 decreases from infinity to 0.
It exists when nu exceeds nu_min = sqrt((pi^2/6) / (sigma^2 + pi^2/6)). The
skewness equation then becomes a scalar equation g(nu) = 0 on (nu_min, 1],
which is scanned over equal panels and refined by Brent's method.
"""
import math

from scipy import optimize

from modules import config
from modules.dist import GenIParams
from modules.specfun import CONSTANTS, digamma, polygamma
from modules.utils import NoSolutionError, get_logger

from .moments import EstimationResult, LogMomentSummary

logger = get_logger("estimate")


class _Profile:
    """delta(nu) and the skewness residual g(nu) for one moment summary."""

    def __init__(self, summary: LogMomentSummary):
        cfg = config.estimate
        self.var = summary.var_log
        self.mu3 = summary.mu3_log
        self.delta_max = cfg["delta_max"]
        self.xtol = cfg["xtol"]
        self.calls = 0
        self.delta_capped = False

    def trigamma_target(self, nu):
        return nu * nu * self.var - CONSTANTS.pi_sq_over6 * (1.0 - nu * nu)

    def delta(self, nu):
        """Solve psi1(delta) = nu^2 sigma^2 - (pi^2/6)(1 - nu^2) for delta."""
        target = self.trigamma_target(nu)
        if target <= 0.0:
            return math.inf
        if polygamma(1, self.delta_max) >= target:
            self.delta_capped = True
            return self.delta_max
        # 1/x^2 < psi1(x) < 1/x + 1/x^2 brackets the root.
        lo = 1.0 / math.sqrt(target)
        hi = min((1.0 + math.sqrt(1.0 + 4.0 * target)) / (2.0 * target), self.delta_max)
        log_delta, info = optimize.brentq(
            lambda s: polygamma(1, math.exp(s)) - target,
            math.log(lo), math.log(hi), xtol=self.xtol, full_output=True,
        )
        self.calls += info.function_calls
        return math.exp(log_delta)

    def skew_residual(self, nu):
        delta = self.delta(nu)
        skew = -2.0 * (nu ** 3 - 1.0) * CONSTANTS.zeta3
        if math.isfinite(delta):
            skew += polygamma(2, delta)
        return skew / nu ** 3 - self.mu3


def _scan(profile, nu_lo, panels):
    grid = [nu_lo + (1.0 - nu_lo) * j / panels for j in range(panels + 1)]
    grid[-1] = 1.0
    return grid, [profile.skew_residual(nu) for nu in grid]


def _roots(profile, grid, values, tol):
    """All roots of g on the panel grid, in increasing nu."""
    roots, iterations = [], 0
    for j in range(len(grid) - 1):
        a, b = grid[j], grid[j + 1]
        ga, gb = values[j], values[j + 1]
        if ga == 0.0:
            roots.append(a)
        elif ga * gb < 0.0:
            root, info = optimize.brentq(
                profile.skew_residual, a, b, xtol=profile.xtol, full_output=True
            )
            roots.append(root)
            iterations += info.iterations
    if abs(values[-1]) <= tol and (not roots or roots[-1] != 1.0):
        roots.append(1.0)
    return roots, iterations


def estimate_gen1(summary: LogMomentSummary):
    """Fit (nu, delta, lam) of the generalized Mittag-Leffler law.

    When g has several roots the smallest nu is returned and every root is
    listed in the diagnostics. When the observed skewness would need nu > 1,
    nu is clamped to 1 and the ``nu`` boundary flag is set.

    Args:
        summary (LogMomentSummary): Log-moments of the waiting times.

    Returns:
        EstimationResult: Estimates, residuals and diagnostics.

    Raises:
        NoSolutionError: If var_log is zero or the moment pair lies outside
            the attainable region.
    """
    cfg = config.estimate
    c = CONSTANTS
    if summary.var_log <= 0.0:
        raise NoSolutionError(
            "log variance must be positive", {"var_log": summary.var_log}
        )

    profile = _Profile(summary)
    nu_min = math.sqrt(c.pi_sq_over6 / (summary.var_log + c.pi_sq_over6))
    nu_lo = max(nu_min, cfg["nu_floor"])
    grid, values = _scan(profile, nu_lo, cfg["panels"])
    roots, iterations = _roots(profile, grid, values, cfg["residual_tol"])

    boundary = {"nu": False, "delta": False}
    if roots:
        nu = roots[0]
    elif min(range(len(values)), key=lambda j: abs(values[j])) == len(values) - 1:
        nu = 1.0
        boundary["nu"] = True
    else:
        # mu3 attainable on (nu_min, 1] lies between the scanned extremes.
        raise NoSolutionError(
            "third log-moment is outside the attainable region",
            {
                "nu_min": nu_min,
                "mu3_log": summary.mu3_log,
                "mu3_attainable": (
                    min(values) + summary.mu3_log,
                    max(values) + summary.mu3_log,
                ),
            },
        )

    profile.delta_capped = False
    delta = profile.delta(nu)
    boundary["delta"] = profile.delta_capped
    lam = math.exp(
        -(nu * (summary.mean_log - c.euler_gamma * (1.0 / nu - 1.0)) - digamma(delta))
    )
    params = GenIParams(nu, delta, lam)

    residuals = {
        "variance": c.pi_sq_over6 * (1.0 / nu ** 2 - 1.0)
        + polygamma(1, delta) / nu ** 2 - summary.var_log,
        "skewness": profile.skew_residual(nu),
    }
    diagnostics = {
        "iterations": iterations,
        "function_calls": profile.calls,
        "nu_min": nu_min,
        "roots": roots,
        "boundary": boundary,
    }
    if len(roots) > 1:
        logger.info("skewness equation has %d roots; using nu=%.6g", len(roots), nu)
    logger.debug("gen1 fit %s, residuals %s", params.as_dict(), residuals)
    return EstimationResult(params, residuals, diagnostics)
