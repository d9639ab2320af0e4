"""State probabilities and count moments of the renewal counting processes.

For the generalized Mittag-Leffler renewal process the m-th arrival time is
generalized Mittag-Leffler with delta m in place of delta, hence

    F_m(t) = P(T_m <= t) = lam^(delta m) t^(nu delta m) E^(delta m)_{nu, nu delta m + 1}(-lam t^nu)
    p_k(t) = P(N(t) = k) = F_k(t) - F_(k+1)(t),   F_0 = 1.
"""
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import special

from modules import config
from modules.dist import GenIParams, genml_cdf
from modules.specfun import ml
from modules.utils import ConvergenceError, DomainError, as_finite, clamp_prob, get_logger

from .renewal import renewal_for

logger = get_logger("process")


@dataclass(frozen=True)
class StatePmf:
    """Distribution of N(t) at one time.

    Attributes:
        t (float): Evaluation time.
        probs (numpy.ndarray): p_0 .. p_K.
        tail_bound (float): P(N(t) > K); exact tail for closed forms, 0 for
            empirical tables.
        std_errors (numpy.ndarray | None): Per-k standard errors of an
            empirical table.
        n_paths (int | None): Number of simulated paths behind an empirical table.
    """

    t: float
    probs: np.ndarray
    tail_bound: float = 0.0
    std_errors: np.ndarray | None = None
    n_paths: int | None = None

    @property
    def k_max(self):
        return self.probs.size - 1

    def total(self):
        return math.fsum(self.probs) + self.tail_bound

    def mean(self):
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def variance(self):
        k = np.arange(self.probs.size)
        return float(np.dot(k * k, self.probs)) - self.mean() ** 2


def _nonnegative_time(t):
    t = as_finite(t, "t")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    return t


def arrival_time_cdf(p: GenIParams, m, t):
    """F_m(t) = P(T_m <= t); F_0 = 1.

    Args:
        p (GenIParams): Waiting-time parameters.
        m (int): Renewal index, >= 0.
        t (float): Time, >= 0.

    Returns:
        float: The probability.
    """
    if int(m) != m or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    if m == 0:
        return 1.0
    return genml_cdf(GenIParams(p.nu, p.delta * m, p.lam), t)


def state_prob(p: GenIParams, k, t):
    """p_k(t) = F_k(t) - F_(k+1)(t) for a single k."""
    t = _nonnegative_time(t)
    if t == 0.0:
        return 1.0 if k == 0 else 0.0
    return max(clamp_prob(arrival_time_cdf(p, k, t) - arrival_time_cdf(p, k + 1, t)), 0.0)


def state_pmf(p: GenIParams, t, k_max="auto"):
    """p_0(t), ..., p_K(t) of the generalized Mittag-Leffler renewal process.

    With ``k_max="auto"`` K starts at the configured k_start and doubles until
    the tail P(N(t) > K) = F_(K+1)(t) falls below tail_tol, then bisects back
    to the smallest such K. Renewal monotonicity makes F_(K+1) an exact bound
    on the omitted mass. Every F_m is computed once per call.

    Args:
        p (GenIParams): Waiting-time parameters.
        t (float): Time, >= 0.
        k_max (int | str, optional): Largest k, or "auto".

    Returns:
        StatePmf: The probabilities and tail mass.

    Raises:
        ConvergenceError: If the auto tail is still too large at k_cap.
    """
    cfg = config.process
    t = _nonnegative_time(t)
    if t == 0.0:
        return StatePmf(0.0, np.ones(1), 0.0)

    cdf_cache = {}

    def cdf(m):
        if m not in cdf_cache:
            cdf_cache[m] = arrival_time_cdf(p, m, t)
        return cdf_cache[m]

    if k_max == "auto":
        tol = cfg["tail_tol"]
        low, k = -1, cfg["k_start"]
        while cdf(k + 1) >= tol:
            if k >= cfg["k_cap"]:
                raise ConvergenceError(
                    "state probabilities need more terms than k_cap",
                    {"k_cap": cfg["k_cap"], "tail": cdf(k + 1), "t": t, **p.as_dict()},
                )
            low, k = k, min(2 * k, cfg["k_cap"])
        # Smallest K in (low, k] with a negligible tail; F_(K+1) decreases in K.
        while k - low > 1:
            mid = (low + k) // 2
            if cdf(mid + 1) < tol:
                k = mid
            else:
                low = mid
    else:
        if int(k_max) != k_max or k_max < 0:
            raise DomainError(f"k_max must be a nonnegative integer or 'auto', got {k_max!r}")
        k = int(k_max)

    values = [cdf(m) for m in range(k + 2)]
    probs = np.array([max(clamp_prob(values[m] - values[m + 1]), 0.0) for m in range(k + 1)])
    logger.debug("state pmf at t=%g: K=%d, tail=%.3g", t, k, values[k + 1])
    return StatePmf(t, probs, float(values[k + 1]))


def mean_count(p: GenIParams, t):
    """E N(t) = sum_{r>=1} F_r(t).

    The outer series stops after ``mean_quiet_terms`` consecutive terms below
    ``mean_rel_tol`` relative to the running sum; its terms decrease
    monotonically, so the last term times the observed decay ratio bounds the
    remainder.

    Args:
        p (GenIParams): Waiting-time parameters.
        t (float): Time, >= 0.

    Returns:
        float: The mean count. For delta = 1 it equals lam t^nu / Gamma(nu + 1).

    Raises:
        ConvergenceError: If mean_max_terms terms do not suffice.
    """
    cfg = config.process
    t = _nonnegative_time(t)
    if t == 0.0:
        return 0.0
    terms, quiet = [], 0
    for r in range(1, cfg["mean_max_terms"] + 1):
        term = arrival_time_cdf(p, r, t)
        terms.append(term)
        total = math.fsum(terms)
        quiet = quiet + 1 if term <= cfg["mean_rel_tol"] * total else 0
        if quiet >= cfg["mean_quiet_terms"]:
            return total
    raise ConvergenceError(
        "mean-count series did not settle",
        {"terms": cfg["mean_max_terms"], "last_term": terms[-1], "t": t, **p.as_dict()},
    )


# =============================================================================
# FRACTIONAL POISSON PROCESS (delta = 1)
# =============================================================================


def _check_nu_lam(nu, lam):
    GenIParams(nu, 1.0, lam)


def fpp_state_pmf(nu, lam, t, k):
    """p_k(t) = (lam t^nu)^k E^(k+1)_{nu, nu k + 1}(-lam t^nu) of the fractional Poisson process.

    Args:
        nu (float): Order in (0, 1].
        lam (float): Rate, > 0.
        t (float): Time, >= 0.
        k (int): State, >= 0.

    Returns:
        float: The probability.
    """
    _check_nu_lam(nu, lam)
    t = _nonnegative_time(t)
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    if t == 0.0:
        return 1.0 if k == 0 else 0.0
    x = lam * t ** nu
    return max(ml(nu, nu * k + 1.0, k + 1.0, -x, k * math.log(x)), 0.0)


def fpp_state_pmf_series(nu, lam, t, k):
    """p_k(t) from the double series (x^k / k!) sum_r (r+k)!/r! (-x)^r / Gamma(nu (r+k) + 1).

    Independent of the Mittag-Leffler code path: the series is summed in
    mpmath at a precision covering its cancellation, x = lam t^nu.
    """
    _check_nu_lam(nu, lam)
    t = _nonnegative_time(t)
    if t == 0.0:
        return 1.0 if k == 0 else 0.0
    k = int(k)
    x = lam * t ** nu
    growth = x ** (1.0 / nu) + k * math.log(x ** (1.0 / nu) + k + 1.0)
    dps = 30 + int(math.ceil(growth / math.log(10.0)))
    with mp.workdps(dps):
        xm, num = mp.mpf(x), mp.mpf(nu)
        eps = mp.mpf(10) ** (-dps + 5)
        total, r = mp.mpf(0), 0
        prefix = mp.power(xm, k) / mp.factorial(k)
        quiet = 0
        while quiet < 3:
            term = mp.factorial(r + k) / mp.factorial(r) * mp.power(-xm, r) * mp.rgamma(num * (r + k) + 1)
            total += term
            past_peak = r > 2 * (x ** (1.0 / nu) + k) + 10
            quiet = quiet + 1 if past_peak and abs(term) < eps else 0
            r += 1
        return float(prefix * total)


def fpp_mean_count(nu, lam, t):
    """E N(t) = lam t^nu / Gamma(nu + 1)."""
    _check_nu_lam(nu, lam)
    t = _nonnegative_time(t)
    return lam * t ** nu / special.gamma(nu + 1.0)


def fpp_count_variance(nu, lam, t):
    """Var N(t) = x / Gamma(nu + 1) + x^2 [1 / (nu Gamma(2 nu)) - 1 / Gamma(nu + 1)^2], x = lam t^nu."""
    _check_nu_lam(nu, lam)
    t = _nonnegative_time(t)
    x = lam * t ** nu
    g1 = special.gamma(nu + 1.0)
    return x / g1 + x * x * (1.0 / (nu * special.gamma(2.0 * nu)) - 1.0 / (g1 * g1))


def fpp_mgf(nu, lam, s, t):
    """E exp(-s N(t)) = E_nu(lam (e^-s - 1) t^nu).

    Args:
        nu (float): Order in (0, 1].
        lam (float): Rate, > 0.
        s (float): Transform variable, >= 0.
        t (float): Time, >= 0.

    Returns:
        float: The transform; 1 at s = 0.
    """
    _check_nu_lam(nu, lam)
    t = _nonnegative_time(t)
    s = as_finite(s, "s")
    if s < 0.0:
        raise DomainError(f"s must be nonnegative, got {s}")
    if s == 0.0 or t == 0.0:
        return 1.0
    return ml(nu, 1.0, 1.0, lam * math.expm1(-s) * t ** nu)


# =============================================================================
# EMPIRICAL STATE PROBABILITIES
# =============================================================================


def empirical_pmf(model, t, n_paths, rng):
    """Relative frequencies of N(t) over ``n_paths`` simulated paths.

    Serves the stretched-squashed process, whose state probabilities have no
    closed form, and checks the closed forms of the other.

    Args:
        model (GenIParams | GenIIParams): Waiting-time law.
        t (float): Time, >= 0.
        n_paths (int): Number of paths, >= 1.
        rng (RngStream): Random stream.

    Returns:
        StatePmf: Frequencies with binomial standard errors sqrt(p (1 - p) / n).
    """
    t = _nonnegative_time(t)
    n_paths = int(n_paths)
    counts = renewal_for(model).counts_at(rng, t, n_paths)
    freqs = np.bincount(counts) / n_paths
    std_errors = np.sqrt(freqs * (1.0 - freqs) / n_paths)
    return StatePmf(t, freqs, 0.0, std_errors, n_paths)
