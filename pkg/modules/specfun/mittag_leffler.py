"""Three-parameter (Prabhakar) Mittag-Leffler function on the real line.

    E^xi_{beta,gamma}(z) = sum_r (xi)_r z^r / (r! Gamma(beta r + gamma))

Evaluation branches:
- |z| <= z_max: the power series with terms built from log-gamma values.
  When the terms cancel mildly the compensated double-precision sum is
  returned; otherwise the same series is re-summed with mpmath at a
  working precision derived from the observed cancellation.
- 0 < beta < 1 and z < -z_asymptotic, or |z|^(1/beta) >= asymptotic_reach:
  the algebraic asymptotic expansion, falling back to the series inside
  z_max when it cannot certify the tolerance.
- z < -z_asymptotic and beta = 1: Kummer's function, E^xi_{1,gamma}(z) = 1F1(xi; gamma; z) / Gamma(gamma).
Everything else is rejected.
"""
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import special

from modules import config
from modules.utils import ConvergenceError, DomainError, as_finite, get_logger

logger = get_logger("specfun")

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class PrabhakarArgs:
    """Parameters and argument of E^xi_{beta,gamma}(z).

    Attributes:
        beta (float): Order, > 0.
        gamma (float): Second parameter, > 0.
        xi (float): Pochhammer exponent, any real.
        z (float): Real argument.
    """

    beta: float
    gamma: float
    xi: float
    z: float

    def __post_init__(self):
        for name in ("beta", "gamma", "xi", "z"):
            object.__setattr__(self, name, as_finite(getattr(self, name), name))
        if self.beta <= 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.gamma <= 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")


def _nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def pochhammer(xi, r):
    """Rising factorial (xi)_r = xi (xi + 1) ... (xi + r - 1).

    Follows the convention (0)_0 = 1 and (0)_r = 0 for r >= 1.

    Args:
        xi (float): Base.
        r (int): Non-negative number of factors.

    Returns:
        float: The rising factorial.
    """
    if r < 0 or int(r) != r:
        raise DomainError(f"r must be a non-negative integer, got {r!r}")
    r = int(r)
    if r == 0:
        return 1.0
    if xi == 0:
        return 0.0
    return float(special.poch(xi, r))


def _log_pochhammer(xi, r):
    """log|(xi)_r| and sign((xi)_r) for an array of term indices."""
    if xi > 0:
        return special.gammaln(xi + r) - special.gammaln(xi), np.ones_like(r)
    if _nonpositive_integer(xi):
        n = -xi
        live = r <= n
        logs = np.full_like(r, -np.inf)
        logs[live] = special.gammaln(n + 1.0) - special.gammaln(n - r[live] + 1.0)
        signs = np.where(r % 2 == 0, 1.0, -1.0)
        return logs, signs
    logs = special.gammaln(xi + r) - special.gammaln(xi)
    signs = special.gammasgn(xi + r) * special.gammasgn(xi)
    return logs, signs


def _series_log_terms(args, r):
    logs, signs = _log_pochhammer(args.xi, r)
    logs = logs - special.gammaln(r + 1.0) - special.gammaln(args.beta * r + args.gamma)
    logs = logs + r * math.log(abs(args.z))
    if args.z < 0:
        signs = signs * np.where(r % 2 == 0, 1.0, -1.0)
    return logs, signs


def _decaying(args, r):
    """True once every later term ratio is safely below one."""
    growth = max(1.0, abs(args.xi + r) / (r + 1.0))
    return (args.beta * r + args.gamma) ** args.beta > 2.0 * growth * abs(args.z)


def _scan_series(args, digits=16.0):
    """Build log-magnitudes and signs of the series terms up to truncation.

    Terms stop once ``quiet_terms`` consecutive decreasing terms sit more than
    ``digits`` decimal digits below the largest term seen.

    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: log|t_r| and sign(t_r).
    """
    cfg = config.specfun
    limit = cfg["max_terms"]
    if _nonpositive_integer(args.xi):
        limit = int(-args.xi) + 1
    threshold = digits * _LN10
    logs_all, signs_all = [], []
    peak, previous, quiet, r0 = -np.inf, np.inf, 0, 0

    while r0 < limit:
        r = np.arange(r0, min(r0 + cfg["chunk"], limit), dtype=float)
        logs, signs = _series_log_terms(args, r)
        logs_all.append(logs)
        signs_all.append(signs)
        for offset, value in enumerate(logs):
            peak = max(peak, value)
            if value < peak - threshold and value <= previous and _decaying(args, r0 + offset):
                quiet += 1
                if quiet >= cfg["quiet_terms"]:
                    end = offset + 1
                    logs_all[-1], signs_all[-1] = logs[:end], signs[:end]
                    return np.concatenate(logs_all), np.concatenate(signs_all)
            else:
                quiet = 0
            previous = value
        r0 += len(r)

    if limit < cfg["max_terms"]:
        return np.concatenate(logs_all), np.concatenate(signs_all)
    raise ConvergenceError(
        "Mittag-Leffler series did not settle",
        {"beta": args.beta, "gamma": args.gamma, "xi": args.xi, "z": args.z, "terms": limit},
    )


def _series_mp(args, n_terms, dps):
    """Sum the first ``n_terms`` series terms at ``dps`` decimal digits.

    Returns:
        tuple[mpmath.mpf, mpmath.mpf]: The sum and the sum of magnitudes.
    """
    with mp.workdps(dps):
        xi, z = mp.mpf(args.xi), mp.mpf(args.z)
        beta, gamma = mp.mpf(args.beta), mp.mpf(args.gamma)
        total, magnitude = mp.mpf(0), mp.mpf(0)
        numerator = mp.mpf(1)  # (xi)_r z^r / r!
        for r in range(n_terms):
            if r:
                numerator *= (xi + r - 1) * z / r
            term = numerator * mp.rgamma(beta * r + gamma)
            total += term
            magnitude += abs(term)
        return total, magnitude


def _evaluate_series(args, log_scale):
    cfg = config.specfun
    logs, signs = _scan_series(args)
    finite = np.isfinite(logs)
    peak = float(np.max(logs[finite]))
    scaled = signs[finite] * np.exp(logs[finite] - peak)
    total = math.fsum(scaled)
    magnitude = float(np.sum(np.abs(scaled)))

    if total != 0.0 and magnitude <= cfg["double_cancellation"] * abs(total):
        return math.copysign(math.exp(peak + math.log(abs(total)) + log_scale), total)

    # Cancellation is too strong for double precision: go to mpmath.
    if total != 0.0:
        lost = math.log10(magnitude / abs(total))
    else:
        lost = 2.0 * (peak - logs[0]) / _LN10
    dps = int(cfg["guard_digits"] + max(lost, 0.0) + 10)
    while dps <= cfg["max_dps"]:
        n_terms = len(_scan_series(args, digits=float(dps))[0])
        logger.debug(
            "E^%g_{%g,%g}(%g): extended precision, dps=%d, terms=%d",
            args.xi, args.beta, args.gamma, args.z, dps, n_terms,
        )
        total_mp, magnitude_mp = _series_mp(args, n_terms, dps)
        if total_mp != 0:
            lost = float(mp.log10(magnitude_mp / abs(total_mp)))
            error = 10.0 ** (lost + math.log10(n_terms) - dps)
            if error <= cfg["rel_tol"]:
                with mp.workdps(dps):
                    return float(total_mp * mp.exp(log_scale))
            next_dps = int(cfg["guard_digits"] + lost + math.log10(n_terms) + 10)
            dps = max(next_dps, dps + 10)
        else:
            dps *= 2

    raise ConvergenceError(
        "Mittag-Leffler series lost all digits to cancellation",
        {"beta": args.beta, "gamma": args.gamma, "xi": args.xi, "z": args.z, "max_dps": cfg["max_dps"]},
    )


def _evaluate_kummer(args, log_scale):
    with mp.workdps(30):
        value = mp.hyp1f1(args.xi, args.gamma, args.z) * mp.rgamma(args.gamma)
        return float(value * mp.exp(log_scale))


def _evaluate_asymptotic(args, log_scale):
    """Algebraic expansion for z -> -infinity, 0 < beta < 1.

    E ~ sum_k (-1)^k (xi)_k / k! * x^(-xi-k) / Gamma(gamma - beta (xi + k)),  x = -z.

    Terms whose gamma argument sits on a pole of Gamma vanish. The sum is
    truncated at its smallest surviving term, which also bounds the error.
    """
    cfg = config.specfun
    x = -args.z
    log_x = math.log(x)
    k = np.arange(cfg["asymptotic_max_terms"], dtype=float)
    log_poch, sign_poch = _log_pochhammer(args.xi, k)
    arg = args.gamma - args.beta * (args.xi + k)
    nearest = np.rint(arg)
    on_pole = (nearest <= 0) & (np.abs(arg - nearest) <= cfg["pole_atol"] * np.maximum(1.0, np.abs(arg)))
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = log_poch - special.gammaln(k + 1.0) - (args.xi + k) * log_x - special.gammaln(arg)
    logs = np.where(on_pole, -np.inf, logs)
    signs = sign_poch * np.where(k % 2 == 0, 1.0, -1.0) * special.gammasgn(arg)

    total, quiet, growing = 0.0, 0, 0
    smallest, best, previous = np.inf, 0.0, np.inf
    for i in range(len(k)):
        if not np.isfinite(logs[i]):
            continue
        term = signs[i] * math.exp(logs[i] + args.xi * log_x)  # x^-xi applied on return
        size = abs(term)
        # One term can dip next to a pole; two rises in a row mean the expansion diverges.
        growing = growing + 1 if size > previous else 0
        if growing >= 2 and size > smallest:
            break
        previous = size
        total += term
        if size < smallest:
            smallest, best = size, total
        if total != 0.0 and size <= cfg["asymptotic_rel_tol"] * abs(total):
            quiet += 1
            if quiet >= cfg["quiet_terms"]:
                best = total
                break
        else:
            quiet = 0

    if best != 0.0 and smallest <= cfg["asymptotic_rel_tol"] * abs(best):
        logger.debug("E^%g_{%g,%g}(%g): asymptotic branch, %d terms",
                     args.xi, args.beta, args.gamma, args.z, i + 1)
        value = math.log(abs(best)) - args.xi * log_x + log_scale
        return math.copysign(math.exp(value), best)

    raise ConvergenceError(
        "Mittag-Leffler asymptotic expansion could not certify the tolerance",
        {"beta": args.beta, "gamma": args.gamma, "xi": args.xi, "z": args.z,
         "smallest_term": smallest, "partial_sum": best},
    )


def _asymptotic_first(args):
    """True where the expansion is tried before the series (z < 0 only)."""
    cfg = config.specfun
    if args.z >= 0.0:
        return False
    if args.z < -cfg["z_asymptotic"]:
        return True
    return math.log(-args.z) >= args.beta * math.log(cfg["asymptotic_reach"])


def mittag_leffler_scaled(args: PrabhakarArgs, log_scale: float = 0.0) -> float:
    """exp(log_scale) * E^xi_{beta,gamma}(z).

    The scale enters the logarithm of every term, so prefactors such as
    (lambda t^nu)^(delta k) never have to be formed on their own.

    Args:
        args (PrabhakarArgs): Parameters and argument.
        log_scale (float, optional): Natural log of the prefactor. Defaults to 0.

    Returns:
        float: The scaled function value.

    Raises:
        DomainError: If z lies outside every supported branch.
        ConvergenceError: If the selected branch cannot certify its tolerance.
    """
    cfg = config.specfun
    if args.z == 0.0 or args.xi == 0.0:
        return float(special.rgamma(args.gamma)) * math.exp(log_scale)
    if _nonpositive_integer(args.xi):
        return _evaluate_series(args, log_scale)

    inside = abs(args.z) <= cfg["z_max"]
    if args.z < -cfg["z_asymptotic"] and args.beta == 1.0:
        return _evaluate_kummer(args, log_scale)
    if args.beta < 1.0 and _asymptotic_first(args):
        try:
            return _evaluate_asymptotic(args, log_scale)
        except ConvergenceError:
            if not inside:
                raise
            logger.debug("E^%g_{%g,%g}(%g): asymptotic branch declined, summing the series",
                         args.xi, args.beta, args.gamma, args.z)
    if inside:
        return _evaluate_series(args, log_scale)
    raise DomainError(
        f"|z| = {abs(args.z):g} exceeds z_max = {config.specfun['z_max']:g} "
        f"and no asymptotic branch covers beta = {args.beta:g}"
    )


def mittag_leffler(args: PrabhakarArgs) -> float:
    """Evaluate the three-parameter Mittag-Leffler function E^xi_{beta,gamma}(z).

    xi = 1 gives the two-parameter function, xi = gamma = 1 the classical one.

    Args:
        args (PrabhakarArgs): Parameters and argument.

    Returns:
        float: E^xi_{beta,gamma}(z).
    """
    return mittag_leffler_scaled(args, 0.0)


def ml(beta, gamma, xi, z, log_scale=0.0):
    """Shorthand for ``mittag_leffler_scaled(PrabhakarArgs(beta, gamma, xi, z), log_scale)``."""
    return mittag_leffler_scaled(PrabhakarArgs(beta, gamma, xi, z), log_scale)
