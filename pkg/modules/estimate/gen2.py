"""Closed-form moment estimators for stretched-squashed Mittag-Leffler waiting times.

With r = nu / gamma the log-moments are

    mu3 = -2 zeta(3) r^3,   sigma^2 = r^2 pi^2 (1/(3 nu^2) - 1/6),

so the 2/3 power of |mu3| fixes |r|, the variance then fixes nu, the sign of
mu3 fixes the sign of gamma, and the mean fixes lam.
"""
import math

from modules.dist import GenIIParams
from modules.specfun import CONSTANTS
from modules.utils import NoSolutionError, get_logger

from .moments import EstimationResult, LogMomentSummary, gen2_log_moments

logger = get_logger("estimate")


def estimate_gen2(summary: LogMomentSummary):
    """Fit (nu, gamma, lam) of the stretched-squashed law.

    Args:
        summary (LogMomentSummary): Log-moments of the waiting times.

    Returns:
        EstimationResult: Estimates, residuals and diagnostics. The ``nu``
            boundary flag is set when the variance asks for nu > 1.

    Raises:
        NoSolutionError: If var_log or mu3_log is zero.
    """
    c = CONSTANTS
    var, mu3 = summary.var_log, summary.mu3_log
    if var <= 0.0 or mu3 == 0.0:
        raise NoSolutionError(
            "log variance and third log-moment must be nonzero",
            {"var_log": var, "mu3_log": mu3},
        )

    ratio = abs(mu3) ** (2.0 / 3.0) / var
    nu = math.sqrt(
        ratio * math.pi ** 2
        / (3.0 * ((2.0 * c.zeta3) ** (2.0 / 3.0) + ratio * c.pi_sq_over6))
    )
    boundary = {"nu": nu > 1.0}
    nu = min(nu, 1.0)

    magnitude = nu * math.pi * math.sqrt(1.0 / (3.0 * nu * nu) - 1.0 / 6.0) / math.sqrt(var)
    if boundary["nu"]:
        # Keep the skewness equation exact; the variance one is then off.
        magnitude = nu * (2.0 * c.zeta3 / abs(mu3)) ** (1.0 / 3.0)
    gamma_exp = -math.copysign(magnitude, mu3)
    lam = math.exp(-(summary.mean_log * gamma_exp + c.euler_gamma * nu))
    params = GenIIParams(nu, gamma_exp, lam)

    fitted = gen2_log_moments(params)
    residuals = {
        "mean": fitted.mean_log - summary.mean_log,
        "variance": fitted.var_log - var,
        "skewness": fitted.mu3_log - mu3,
    }
    diagnostics = {"iterations": 0, "boundary": boundary}
    logger.debug("gen2 fit %s, residuals %s", params.as_dict(), residuals)
    return EstimationResult(params, residuals, diagnostics)
