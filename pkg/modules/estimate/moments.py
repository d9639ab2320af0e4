"""Log-moment summaries of waiting times and their population counterparts.

Both waiting-time laws factor into a product of independent variates, so the
logarithm of a waiting time is a sum and its first three cumulants are sums
of digamma-type terms. The estimators match these against sample analogues.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from modules.dist import GenIIParams, GenIParams
from modules.specfun import CONSTANTS, digamma, polygamma
from modules.utils import DomainError, as_array


@dataclass(frozen=True)
class LogMomentSummary:
    """Mean, variance and third central moment of log waiting times.

    Attributes:
        n (int | None): Sample size; None for population moments.
        mean_log (float): Mean of ln T.
        var_log (float): Variance of ln T, population denominator.
        mu3_log (float): Third central moment of ln T, population denominator.
    """

    n: int | None
    mean_log: float
    var_log: float
    mu3_log: float

    def __post_init__(self):
        for name in ("mean_log", "var_log", "mu3_log"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.var_log < 0.0:
            raise DomainError(f"var_log must be nonnegative, got {self.var_log}")

    def as_dict(self):
        return {
            "n": self.n,
            "mean_log": self.mean_log,
            "var_log": self.var_log,
            "mu3_log": self.mu3_log,
        }


@dataclass(frozen=True)
class EstimationResult:
    """Outcome of a method-of-moments fit.

    Attributes:
        params (GenIParams | GenIIParams): The estimates.
        residuals (dict): Moment-equation residuals at the estimates.
        diagnostics (dict): Solver iterations, boundary flags and whatever
            else the estimator records.
    """

    params: GenIParams | GenIIParams
    residuals: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def clamped(self):
        """True if any parameter was pushed onto a boundary."""
        return any(self.diagnostics.get("boundary", {}).values())

    def residual_norm(self):
        return math.sqrt(sum(value * value for value in self.residuals.values()))


def log_moment_summary(samples):
    """Summarize the logarithms of positive observations.

    Args:
        samples (array_like): Waiting times, all > 0, at least three.

    Returns:
        LogMomentSummary: The sample log-moments; exactly (ln c, 0, 0) when
            every observation equals c.

    Raises:
        DomainError: On fewer than three samples or a nonpositive entry.
    """
    values = as_array(samples, "samples", positive=True)
    if values.size < 3:
        raise DomainError(f"need at least 3 samples, got {values.size}")
    logs = np.log(values)
    if np.ptp(logs) == 0.0:
        return LogMomentSummary(int(values.size), float(logs[0]), 0.0, 0.0)
    mean = math.fsum(logs) / logs.size
    centred = logs - mean
    var = float(np.mean(centred * centred))
    mu3 = float(np.mean(centred * centred * centred))
    return LogMomentSummary(int(values.size), mean, var, mu3)


# =============================================================================
# POPULATION LOG-MOMENTS
# =============================================================================


def gen1_log_moments(p: GenIParams):
    """Population log-moments of the generalized Mittag-Leffler law.

    With T = U^(1/nu) V, U gamma(delta, lam) and V positive stable,

        E ln T   = eta (1/nu - 1) + (psi(delta) - ln lam) / nu
        Var ln T = (pi^2 / 6)(1/nu^2 - 1) + psi1(delta) / nu^2
        mu3      = [psi2(delta) - 2 (nu^3 - 1) zeta(3)] / nu^3

    where eta is Euler's constant.
    """
    c = CONSTANTS
    nu, delta = p.nu, p.delta
    mean = c.euler_gamma * (1.0 / nu - 1.0) + (digamma(delta) - math.log(p.lam)) / nu
    var = c.pi_sq_over6 * (1.0 / nu ** 2 - 1.0) + polygamma(1, delta) / nu ** 2
    mu3 = (polygamma(2, delta) - 2.0 * (nu ** 3 - 1.0) * c.zeta3) / nu ** 3
    return LogMomentSummary(None, mean, var, mu3)


def gen2_log_moments(p: GenIIParams):
    """Population log-moments of the stretched-squashed law, Xi = X^(nu/gamma).

        E ln Xi   = (nu/gamma)(-ln lam / nu - eta)
        Var ln Xi = (nu/gamma)^2 pi^2 (1/(3 nu^2) - 1/6)
        mu3       = -2 zeta(3) (nu/gamma)^3
    """
    c = CONSTANTS
    nu, ratio = p.nu, p.nu / p.gamma_exp
    mean = ratio * (-math.log(p.lam) / nu - c.euler_gamma)
    var = ratio ** 2 * math.pi ** 2 * (1.0 / (3.0 * nu ** 2) - 1.0 / 6.0)
    mu3 = -2.0 * c.zeta3 * ratio ** 3
    return LogMomentSummary(None, mean, var, mu3)
