"""Monte Carlo bias and RMSE of the moment estimators.

Replication r of row i at sample size m draws its m waiting times from the
substream (seed, i, m, r), so every number in a study is a function of the
configuration alone. Replications may run on several worker processes;
results are reduced in replication order either way.
"""
import csv
import json
import math
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from modules import config
from modules.dist import RngStream
from modules.estimate import estimate_from_samples
from modules.process import renewal_for
from modules.utils import ConvergenceError, DomainError, FppError, get_logger

from .config import StudyConfig

logger = get_logger("mcstudy")

SUBSTREAM_RULE = "(seed, row, m, replication)"
FAILURE_POLICY = "failed replications are excluded from bias and rmse and counted"
CSV_COLUMNS = ("model", "nu", "delta_or_gamma", "lambda", "m", "param", "bias", "rmse", "failures")


@dataclass(frozen=True)
class StudyCell:
    """Bias and RMSE of one parameter in one (row, m) cell.

    Attributes:
        row (int): Index of the true-parameter row.
        truth (dict): The row's true parameters.
        m (int): Sample size.
        param (str): "nu", "delta", "gamma" or "lambda".
        bias (float): Mean of estimate - truth over successful replications.
        rmse (float): Root mean square of the same errors.
        failures (int): Replications whose estimation raised.
        replications (int): Replications attempted.
    """

    row: int
    truth: dict
    m: int
    param: str
    bias: float
    rmse: float
    failures: int
    replications: int

    def as_row(self, model):
        values = list(self.truth.values())
        return {
            "model": model,
            "nu": values[0],
            "delta_or_gamma": values[1],
            "lambda": values[2],
            "m": self.m,
            "param": self.param,
            "bias": self.bias,
            "rmse": self.rmse,
            "failures": self.failures,
        }


@dataclass(frozen=True)
class StudyResult:
    """All cells of a study in (row, m, parameter) order."""

    config: StudyConfig
    cells: tuple
    metadata: dict = field(default_factory=dict)

    def cell(self, row, m, param):
        for cell in self.cells:
            if (cell.row, cell.m, cell.param) == (row, m, param):
                return cell
        raise KeyError((row, m, param))

    def rows(self):
        return [cell.as_row(self.config.model) for cell in self.cells]


# =============================================================================
# REPLICATIONS
# =============================================================================


def replicate(model, params, m, seed, row, replication):
    """Draw one sample and estimate it.

    Returns:
        tuple[float, float, float] | None: The estimates in the order of
            ``params.as_dict()``, or None if the estimator failed.
    """
    rng = RngStream.substream(seed, row, m, replication)
    samples = renewal_for(params).waiting_times(rng, m)
    try:
        result = estimate_from_samples(model, samples)
    except FppError as exc:
        logger.debug("row %d, m=%d, replication %d failed: %s", row, m, replication, exc)
        return None
    return tuple(result.params.as_dict().values())


def _replicate_task(task):
    return replicate(*task)


def summarize_cell(truth, estimates, replications):
    """Bias and RMSE per parameter from a cell's estimates.

    Args:
        truth (dict): True parameters.
        estimates (list[tuple | None]): One entry per replication, None for
            a failure.
        replications (int): Replications attempted.

    Returns:
        list[tuple[str, float, float, int]]: (param, bias, rmse, failures).
    """
    ok = [e for e in estimates if e is not None]
    failures = replications - len(ok)
    if not ok:
        return [(name, math.nan, math.nan, failures) for name in truth]
    errors = np.asarray(ok, dtype=float) - np.asarray(list(truth.values()), dtype=float)
    bias = errors.mean(axis=0)
    rmse = np.sqrt(np.mean(errors * errors, axis=0))
    return [
        (name, float(bias[j]), float(rmse[j]), failures)
        for j, name in enumerate(truth)
    ]


def run_study(study: StudyConfig, workers=None):
    """Run every (row, m) cell of ``study``.

    Args:
        study (StudyConfig): The experiment.
        workers (int, optional): Worker processes; defaults to the configured
            count. The result does not depend on it.

    Returns:
        StudyResult: Cells in (row, m, parameter) order.

    Raises:
        ConvergenceError: If more than the configured share of a cell's
            replications fail.
    """
    workers = int(workers or config.study["workers"])
    if workers < 1:
        raise DomainError(f"workers must be at least 1, got {workers}")
    abort_share = config.study["abort_failure_share"]
    reps = study.replications

    pool = Pool(processes=workers) if workers > 1 else None
    cells = []
    try:
        for row, params in enumerate(study.rows):
            truth = params.as_dict()
            for m in study.sample_sizes:
                tasks = [(study.model, params, m, study.seed, row, r) for r in range(reps)]
                if pool is None:
                    estimates = [_replicate_task(task) for task in tasks]
                else:
                    chunk = max(1, reps // (4 * workers))
                    estimates = pool.map(_replicate_task, tasks, chunksize=chunk)

                summary = summarize_cell(truth, estimates, reps)
                failures = summary[0][3]
                if failures > abort_share * reps:
                    raise ConvergenceError(
                        "too many replications failed in a study cell",
                        {"row": row, "m": m, "failures": failures, "replications": reps, **truth},
                    )
                cells.extend(
                    StudyCell(row, truth, m, name, bias, rmse, fails, reps)
                    for name, bias, rmse, fails in summary
                )
                logger.info(
                    "row %d %s, m=%d: %d/%d replications ok",
                    row, truth, m, reps - failures, reps,
                )
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    metadata = {
        "schema_version": config.output["schema_version"],
        "seed": study.seed,
        "substream_rule": SUBSTREAM_RULE,
        "bit_generator": "Philox",
        "failure_policy": FAILURE_POLICY,
        "replications": reps,
    }
    return StudyResult(study, tuple(cells), metadata)


# =============================================================================
# WRITERS
# =============================================================================


def _format(value):
    if isinstance(value, float):
        return config.output["float_format"] % value
    return value


def write_csv(result: StudyResult, path):
    """Write one line per cell and parameter, header first."""
    with open(path, "w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file)
        writer.writerow(CSV_COLUMNS)
        for row in result.rows():
            writer.writerow([_format(row[column]) for column in CSV_COLUMNS])


def _json_safe(value):
    return None if isinstance(value, float) and not math.isfinite(value) else value


def write_json(result: StudyResult, path):
    """Write the cells together with the study metadata."""
    study = result.config
    payload = {
        "schema_version": config.output["schema_version"],
        "metadata": {
            **result.metadata,
            "model": study.model,
            "sample_sizes": list(study.sample_sizes),
        },
        "rows": [
            {key: _json_safe(value) for key, value in row.items()} for row in result.rows()
        ],
    }
    with open(path, "w", encoding="utf-8") as file:
        json.dump(payload, file, indent=2)
