from modules.dist import GenIIParams, GenIParams
from modules.utils import DomainError

from .gen1 import estimate_gen1
from .gen2 import estimate_gen2
from .moments import (
    EstimationResult,
    LogMomentSummary,
    gen1_log_moments,
    gen2_log_moments,
    log_moment_summary,
)

_ESTIMATORS = {"gen1": estimate_gen1, "gen2": estimate_gen2}


def estimate_from_samples(model, samples):
    """Fit ``model`` ("gen1" or "gen2") to observed waiting times."""
    if model not in _ESTIMATORS:
        raise DomainError(f"model must be one of {sorted(_ESTIMATORS)}, got {model!r}")
    return _ESTIMATORS[model](log_moment_summary(samples))


def population_log_moments(params):
    """Exact log-moments of GenIParams or GenIIParams."""
    if isinstance(params, GenIParams):
        return gen1_log_moments(params)
    if isinstance(params, GenIIParams):
        return gen2_log_moments(params)
    raise DomainError(f"unknown waiting-time model {type(params).__name__}")


__all__ = [
    "LogMomentSummary", "EstimationResult",
    "log_moment_summary", "gen1_log_moments", "gen2_log_moments",
    "population_log_moments",
    "estimate_gen1", "estimate_gen2", "estimate_from_samples",
]
