"""Subcommands of ``main.py``.

Every command takes plain keyword arguments, does its work through the
library modules and returns an OutputRecord; parsing and exit codes live in
``main.py``.
"""
import csv
import io
import os

import numpy as np

from modules.dist import (
    GenIIParams,
    GenIParams,
    RngStream,
    genml_cdf,
    genml_fractional_moment,
    genml_lt,
    genml_pdf,
    ssml_cdf,
    ssml_fractional_moment,
    ssml_lt_series,
    ssml_pdf,
    ssml_sample,
)
from modules.estimate import estimate_from_samples
from modules.mcstudy import CSV_COLUMNS, read_study_config, run_study, write_csv, write_json
from modules.process import empirical_pmf, mean_count, simulate_paths, state_pmf
from modules.utils import DomainError, as_finite, get_logger

from .output import OutputRecord
from .validate import run_suite

logger = get_logger("cli")

EVAL_KINDS = ("pdf", "cdf", "pmf", "mean", "lt", "moment")


def make_params(model, nu, lam, delta=None, gamma=None):
    """GenIParams or GenIIParams from command-line flags.

    Raises:
        DomainError: If the flags do not describe a valid parameter set.
    """
    if nu is None or lam is None:
        raise DomainError("--nu and --lambda are required")
    if model == "gen1":
        if gamma is not None:
            raise DomainError("--gamma belongs to gen2; gen1 takes --delta")
        return GenIParams(nu, 1.0 if delta is None else delta, lam)
    if model == "gen2":
        if gamma is None:
            raise DomainError("gen2 requires --gamma")
        if delta is not None:
            raise DomainError("--delta belongs to gen1; gen2 takes --gamma")
        return GenIIParams(nu, gamma, lam)
    raise DomainError(f"model must be gen1 or gen2, got {model!r}")


def _tagged(model, params):
    return {"model": model, **params.as_dict()}


def _grid(values, flag):
    if not values:
        raise DomainError(f"{flag} needs at least one value")
    return [as_finite(v, flag) for v in values]


# =============================================================================
# EVAL
# =============================================================================


def cmd_eval(kind, model, nu, lam, delta=None, gamma=None, t=None, s=None, q=None,
             kmax="auto", paths=10_000, seed=0):
    """Evaluate a density, distribution function, pmf, mean, transform or moment.

    Args:
        kind (str): One of pdf, cdf, pmf, mean, lt, moment.
        model (str): "gen1" or "gen2".
        nu, lam, delta, gamma (float): Model parameters.
        t (list[float], optional): Times for pdf, cdf, pmf and mean.
        s (list[float], optional): Transform variables for lt.
        q (list[float], optional): Orders for moment.
        kmax (int | str, optional): Largest state for a gen1 pmf.
        paths (int, optional): Simulated paths for a gen2 pmf.
        seed (int, optional): Seed for a gen2 pmf.

    Returns:
        OutputRecord: One row per grid point (per state for pmf).
    """
    p = make_params(model, nu, lam, delta, gamma)
    arguments = {"kind": kind, "t": t, "s": s, "q": q, "kmax": kmax}
    record = OutputRecord("eval", arguments, params=_tagged(model, p))
    gen1 = isinstance(p, GenIParams)

    if kind in ("pdf", "cdf"):
        func = {("pdf", True): genml_pdf, ("cdf", True): genml_cdf,
                ("pdf", False): ssml_pdf, ("cdf", False): ssml_cdf}[kind, gen1]
        record.columns = ["t", kind]
        record.rows = [(x, func(p, x)) for x in _grid(t, "--t")]
    elif kind == "lt":
        func = genml_lt if gen1 else ssml_lt_series
        record.columns = ["s", "lt"]
        record.rows = [(x, func(p, x)) for x in _grid(s, "--s")]
    elif kind == "moment":
        func = genml_fractional_moment if gen1 else ssml_fractional_moment
        record.columns = ["q", "moment"]
        record.rows = [(x, func(p, x)) for x in _grid(q, "--q")]
    elif kind == "mean":
        if not gen1:
            raise DomainError("the mean count has a closed form for gen1 only")
        record.columns = ["t", "mean"]
        record.rows = [(x, mean_count(p, x)) for x in _grid(t, "--t")]
    elif kind == "pmf":
        record.columns = ["t", "k", "prob"] if gen1 else ["t", "k", "prob", "std_error"]
        tails = {}
        for x in _grid(t, "--t"):
            if gen1:
                pmf = state_pmf(p, x, kmax)
                record.rows += [(x, k, float(v)) for k, v in enumerate(pmf.probs)]
                tails[x] = pmf.tail_bound
            else:
                rng = RngStream(seed, 0)
                pmf = empirical_pmf(p, x, paths, rng)
                record.rows += [
                    (x, k, float(v), float(e))
                    for k, (v, e) in enumerate(zip(pmf.probs, pmf.std_errors))
                ]
                record.rng = rng.metadata()
        if tails:
            record.extra["tail_bound"] = tails
    else:
        raise DomainError(f"kind must be one of {', '.join(EVAL_KINDS)}, got {kind!r}")
    return record


# =============================================================================
# SIMULATE AND ESTIMATE
# =============================================================================


def cmd_simulate(model, nu, lam, delta=None, gamma=None, paths=1, horizon=None,
                 events=None, seed=0):
    """Simulate renewal paths; path i uses the stream (seed, i).

    Returns:
        OutputRecord: Rows (path_id, event_index, event_time), event_index from 1.
    """
    p = make_params(model, nu, lam, delta, gamma)
    if int(paths) < 1:
        raise DomainError(f"--paths must be at least 1, got {paths}")
    simulated = simulate_paths(p, int(paths), seed, horizon=horizon, max_events=events)
    rows = [
        (i, j + 1, float(time))
        for i, path in enumerate(simulated)
        for j, time in enumerate(path.event_times)
    ]
    logger.info("simulated %d paths, %d events", len(simulated), len(rows))
    return OutputRecord(
        "simulate",
        {"paths": paths, "horizon": horizon, "events": events},
        params=_tagged(model, p),
        columns=["path_id", "event_index", "event_time"],
        rows=rows,
        rng={"seed": seed, "substream_rule": "(seed, path_id)", "bit_generator": "Philox"},
        extra={"terminal_counts": [len(path) for path in simulated]},
    )


def read_waiting_times(stream):
    """Waiting times from the first column of CSV text.

    A non-numeric first row is taken as a header. Blank lines and ``#``
    comments are skipped.

    Raises:
        DomainError: Naming the row of a non-numeric or nonpositive entry.
    """
    values = []
    for number, row in enumerate(csv.reader(stream), start=1):
        if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
            continue
        text = row[0].strip()
        try:
            value = float(text)
        except ValueError:
            if not values and number == 1:
                continue
            raise DomainError(f"row {number}: waiting time is not a number: {text!r}") from None
        if not value > 0.0 or not np.isfinite(value):
            raise DomainError(f"row {number}: waiting time must be positive and finite, got {text}")
        values.append(value)
    if not values:
        raise DomainError("no waiting times in the input")
    return np.array(values)


def cmd_estimate(model, input_stream):
    """Fit ``model`` to the waiting times read from ``input_stream``.

    Returns:
        OutputRecord: Rows (param, estimate), plus residuals and diagnostics.
    """
    samples = read_waiting_times(input_stream)
    result = estimate_from_samples(model, samples)
    return OutputRecord(
        "estimate",
        {"model": model, "n": int(samples.size)},
        params={"model": model, "n": int(samples.size)},
        columns=["param", "estimate"],
        rows=list(result.params.as_dict().items()),
        extra={"residuals": result.residuals, "diagnostics": result.diagnostics},
    )


# =============================================================================
# VALIDATE, STUDY, FIGURES
# =============================================================================


def cmd_validate(suite="all"):
    """Run the numerical self-checks.

    Returns:
        OutputRecord: Rows (suite, check, error, tolerance, passed);
            ``extra["passed"]`` is True iff every check passed.
    """
    checks = run_suite(suite)
    return OutputRecord(
        "validate",
        {"suite": suite},
        columns=["suite", "check", "error", "tolerance", "passed"],
        rows=[(c.suite, c.name, c.error, c.tolerance, c.passed) for c in checks],
        extra={"passed": all(c.passed for c in checks)},
    )


def cmd_study(config_path, out_dir, workers=None, seed=None):
    """Run a Monte Carlo study and write ``<name>.csv`` and ``<name>.json`` to ``out_dir``.

    Returns:
        OutputRecord: The study rows.
    """
    study = read_study_config(config_path, seed=seed)
    result = run_study(study, workers=workers)
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(config_path))[0]
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    json_path = os.path.join(out_dir, f"{stem}.json")
    write_csv(result, csv_path)
    write_json(result, json_path)
    logger.info("study written to %s and %s", csv_path, json_path)

    return OutputRecord(
        "study",
        {"config": config_path, "out": out_dir, "workers": workers},
        columns=list(CSV_COLUMNS),
        rows=[tuple(row[c] for c in CSV_COLUMNS) for row in result.rows()],
        rng={"seed": study.seed, "substream_rule": result.metadata["substream_rule"],
             "bit_generator": "Philox"},
        extra={"files": [csv_path, json_path]},
    )


FIGURE1_NUS = (0.2, 0.4, 0.6, 0.8, 1.0)
FIGURE1_SHAPES = ((0.5, 1.0), (2.0, 1.0))
FIGURE2_NUS = (0.1, 0.5, 1.0)
FIGURE2_GAMMAS = (-0.5, 1.0, 5.0)
FIGURE2_DELTA = 2.0


def figure1_grid(points=200, t_max=5.0):
    """Generalized Mittag-Leffler densities on (0, t_max]."""
    times = np.linspace(t_max / points, t_max, points)
    rows = []
    for delta, lam in FIGURE1_SHAPES:
        for nu in FIGURE1_NUS:
            p = GenIParams(nu, delta, lam)
            rows += [(nu, delta, lam, float(t), float(v)) for t, v in zip(times, genml_pdf(p, times))]
    return ["nu", "delta", "lambda", "t", "pdf"], rows


def figure2_grid(seed, samples=100_000, bins=100, x_max=5.0):
    """Histogram densities of X^(nu/gamma) with a generalized Mittag-Leffler base X.

    Densities are normalised by the total sample count, so mass beyond x_max
    is left out of the grid rather than spread over it.
    """
    edges = np.linspace(0.0, x_max, bins + 1)
    width = edges[1] - edges[0]
    rows = []
    for index, (nu, gamma) in enumerate(
        (nu, gamma) for nu in FIGURE2_NUS for gamma in FIGURE2_GAMMAS
    ):
        p = GenIIParams(nu, gamma, 1.0)
        draws = ssml_sample(p, RngStream(seed, index), samples, delta=FIGURE2_DELTA)
        counts, _ = np.histogram(draws, bins=edges)
        density = counts / (samples * width)
        rows += [
            (nu, gamma, FIGURE2_DELTA, 1.0, float(a), float(b), float(d))
            for a, b, d in zip(edges[:-1], edges[1:], density)
        ]
    return ["nu", "gamma", "delta", "lambda", "x_left", "x_right", "density"], rows


def cmd_figure(which, seed=0, samples=100_000):
    """Density grids behind the two density figures, as CSV rows.

    Args:
        which (int): 1 for the generalized Mittag-Leffler densities, 2 for the
            stretched-squashed histograms.
        seed (int, optional): Seed of the figure 2 draws.
        samples (int, optional): Draws per figure 2 panel.
    """
    if which == 1:
        columns, rows = figure1_grid()
        rng = None
    elif which == 2:
        columns, rows = figure2_grid(seed, samples)
        rng = {"seed": seed, "substream_rule": "(seed, panel)", "bit_generator": "Philox"}
    else:
        raise DomainError(f"figure must be 1 or 2, got {which!r}")
    return OutputRecord("figure", {"which": which}, columns=columns, rows=rows, rng=rng)


def render(record, fmt="csv"):
    """The record as CSV or JSON text."""
    buffer = io.StringIO()
    record.write(buffer, fmt)
    return buffer.getvalue()
