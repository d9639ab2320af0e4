import math

import numpy as np

from modules import config
from modules.utils import DomainError

# Asymptotic coefficients of psi^(n)(x) for large x (Bernoulli numbers folded in).
# digamma: log x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + 1/(240x^8) - 1/(132x^10)
_DIGAMMA_EVEN = (-1.0 / 12.0, 1.0 / 120.0, -1.0 / 252.0, 1.0 / 240.0, -1.0 / 132.0)
# trigamma: 1/x + 1/(2x^2) + sum B_2k / x^(2k+1)
_TRIGAMMA_ODD = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0)
# tetragamma: -1/x^2 - 1/x^3 - sum B_2k (2k+1) / x^(2k+2)
_TETRAGAMMA_EVEN = (1.0 / 2.0, -1.0 / 6.0, 1.0 / 6.0, -3.0 / 10.0, 5.0 / 6.0)


def _as_positive(tau):
    arr = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("tau must be a positive real number")
    return arr


def _unwrap(result, like):
    return float(result[0]) if like.ndim == 0 else result.reshape(like.shape)


def _shift_upward(x, threshold, step):
    """Apply ``step(x)`` and increment ``x`` until every entry reaches ``threshold``.

    Args:
        x (numpy.ndarray): One-dimensional positive arguments.
        threshold (float): Smallest argument handed to the expansion.
        step (callable): Recurrence term collected at each shifted argument.

    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: The shifted arguments and the
            accumulated recurrence terms.
    """
    x = x.copy()
    collected = np.zeros_like(x)
    low = x < threshold
    while np.any(low):
        collected[low] += step(x[low])
        x[low] += 1.0
        low = x < threshold
    return x, collected


def _shift_scalar(x, threshold, step):
    collected = 0.0
    while x < threshold:
        collected += step(x)
        x += 1.0
    return x, collected


def _digamma_series(x):
    inv2 = 1.0 / (x * x)
    series = 0.0
    for coef in reversed(_DIGAMMA_EVEN):
        series = coef + inv2 * series
    return np.log(x) - 0.5 / x + inv2 * series


def digamma_expansion(tau):
    """The large-argument expansion of psi(tau), applied without shifting.

    Args:
        tau (float | array_like): Positive argument(s).

    Returns:
        float | numpy.ndarray: log tau - 1/(2 tau) - 1/(12 tau^2)
            + 1/(120 tau^4) - 1/(252 tau^6) + 1/(240 tau^8) - 1/(132 tau^10).
    """
    x = _as_positive(tau)
    return _unwrap(_digamma_series(np.atleast_1d(x)), x)


def digamma(tau):
    """Digamma function psi(tau) = d/dtau log Gamma(tau).

    Arguments below the shift threshold are moved upward with
    psi(tau) = psi(tau + 1) - 1/tau before the expansion is applied.

    Args:
        tau (float | array_like): Positive argument(s).

    Returns:
        float | numpy.ndarray: psi(tau), absolute error below 1e-12.

    Raises:
        DomainError: If any tau <= 0.
    """
    x = _as_positive(tau)
    threshold = config.specfun["digamma_shift"]
    if x.ndim == 0:
        shifted, collected = _shift_scalar(float(x), threshold, lambda v: 1.0 / v)
        return float(_digamma_series(shifted) - collected)
    shifted, collected = _shift_upward(x.ravel(), threshold, lambda v: 1.0 / v)
    return _unwrap(_digamma_series(shifted) - collected, x)


def _trigamma_series(x):
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for coef in reversed(_TRIGAMMA_ODD):
        series = coef + inv2 * series
    return inv + 0.5 * inv2 + inv2 * inv * series


def _tetragamma_series(x):
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for coef in reversed(_TETRAGAMMA_EVEN):
        series = coef + inv2 * series
    return -(inv2 + inv2 * inv + inv2 * inv2 * series)


def polygamma(n, tau):
    """Trigamma (n = 1) or tetragamma (n = 2) function.

    Uses psi^(n)(tau) = psi^(n)(tau + 1) - (-1)^n n! / tau^(n+1) to move the
    argument into the range where the asymptotic series is accurate.

    Args:
        n (int): Order, 1 or 2.
        tau (float | array_like): Positive argument(s).

    Returns:
        float | numpy.ndarray: psi^(n)(tau), absolute error below 1e-9.

    Raises:
        DomainError: If n is not 1 or 2, or tau <= 0.
    """
    if n not in (1, 2):
        raise DomainError(f"polygamma order must be 1 or 2, got {n!r}")
    x = _as_positive(tau)
    weight = (-1.0) ** n * math.factorial(n)

    threshold = config.specfun["polygamma_shift"]
    series = _trigamma_series if n == 1 else _tetragamma_series

    def step(v):
        return weight / v ** (n + 1)

    if x.ndim == 0:
        shifted, collected = _shift_scalar(float(x), threshold, step)
        return float(series(shifted) - collected)
    shifted, collected = _shift_upward(x.ravel(), threshold, step)
    return _unwrap(series(shifted) - collected, x)
