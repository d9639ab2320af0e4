import logging
import math

import numpy as np


# =============================================================================
# LOGGING
# =============================================================================

_LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def get_logger(name: str) -> logging.Logger:
    """Returns a logger living under the package-wide ``fpp`` namespace.

    Args:
        name (str): Short name of the calling module, e.g. ``"specfun"``.

    Returns:
        logging.Logger: The child logger ``fpp.<name>``.
    """
    return logging.getLogger(f"fpp.{name}")


def configure_logging(level=logging.WARNING):
    """Attach a single stream handler to the package root logger.

    Calling it again only changes the level, so the CLI can raise verbosity
    after parsing its flags.

    Args:
        level (int, optional): A ``logging`` level. Defaults to WARNING.
    """
    root = logging.getLogger("fpp")
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        root.addHandler(handler)
    root.setLevel(level)


# =============================================================================
# ERRORS
# =============================================================================


class FppError(Exception):
    """Base class for every error raised by the library."""


class DomainError(FppError, ValueError):
    """An argument or parameter lies outside its documented domain."""


class ConvergenceError(FppError, ArithmeticError):
    """A series, expansion or truncation could not certify its tolerance.

    Attributes:
        diagnostics (dict): Whatever the failing routine knew when it gave up.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self):
        if not self.diagnostics:
            return super().__str__()
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{super().__str__()} ({details})"


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not reach the requested tolerance."""


class NoSolutionError(FppError):
    """The estimating equations have no solution for the given moments.

    Attributes:
        diagnostics (dict): Attainable-region information for the caller.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


# =============================================================================
# VALIDATION HELPERS
# =============================================================================


def as_finite(value, name):
    """Convert ``value`` to a finite float or raise a DomainError.

    Args:
        value: Anything ``float()`` accepts.
        name (str): The parameter name used in the error message.

    Returns:
        float: The converted value.
    """
    try:
        result = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(result):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return result


def clamp_prob(p):
    """Clamp probability to [0, 1] to absorb floating-point drift.

    Values further outside than 1e-12 are returned unchanged so that genuine
    errors stay visible.

    Args:
        p (float): The probability value.

    Returns:
        float: The clamped probability.
    """
    if -1e-12 < p < 0:
        return 0.0
    if 1 < p < 1 + 1e-12:
        return 1.0
    return p


def as_array(values, name, positive=False):
    """Return ``values`` as a 1-D float64 array, optionally checking positivity.

    Args:
        values: A scalar or sequence of numbers.
        name (str): The argument name used in error messages.
        positive (bool, optional): Reject entries ``<= 0``. Defaults to False.

    Returns:
        numpy.ndarray: The values.
    """
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must contain finite numbers only")
    if positive:
        bad = np.flatnonzero(arr <= 0)
        if bad.size:
            raise DomainError(
                f"{name} must be strictly positive; entry {int(bad[0])} is {arr[bad[0]]!r}"
            )
    return arr


def elementwise(func, values):
    """Apply a scalar function over a scalar or array-like argument.

    Args:
        func (callable): Function of one float returning a float.
        values: A scalar or array-like of inputs.

    Returns:
        float | numpy.ndarray: A float for scalar input, else an array of the
            input's shape.
    """
    result = np.vectorize(func, otypes=[float])(values)
    return float(result) if result.ndim == 0 else result
