import os
from dataclasses import dataclass

from modules import config
from modules.dist import GenIIParams, GenIParams
from modules.utils import DomainError

_MODELS = {"gen1": "delta", "gen2": "gamma"}
_REQUIRED = ("model", "nu", "lambda", "sample_sizes", "replications")


@dataclass(frozen=True)
class StudyConfig:
    """A Monte Carlo bias/RMSE experiment.

    Attributes:
        model (str): "gen1" or "gen2".
        rows (tuple[GenIParams | GenIIParams, ...]): True parameters, one per row.
        sample_sizes (tuple[int, ...]): Waiting times per replication.
        replications (int): Replications per (row, sample size) cell.
        seed (int): Root seed of every substream.
    """

    model: str
    rows: tuple
    sample_sizes: tuple
    replications: int
    seed: int

    def __post_init__(self):
        if self.model not in _MODELS:
            raise DomainError(f"model must be gen1 or gen2, got {self.model!r}")
        if not self.rows:
            raise DomainError("a study needs at least one parameter row")
        if not self.sample_sizes or any(m < 3 for m in self.sample_sizes):
            raise DomainError("sample sizes must be at least 3")
        if self.replications < 1:
            raise DomainError("replications must be at least 1")
        if self.seed < 0:
            raise DomainError("seed must be nonnegative")

    @property
    def shape_name(self):
        """Name of the second parameter: "delta" or "gamma"."""
        return _MODELS[self.model]


def default_seed():
    """The seed from the FPP_SEED environment variable, else the configured default."""
    raw = os.environ.get(config.study["seed_env"])
    if raw is None or not raw.strip():
        return config.study["default_seed"]
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"{config.study['seed_env']} must be an integer, got {raw!r}") from exc


def _numbers(text, key, kind=float):
    try:
        return [kind(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise DomainError(f"{key} must be a comma-separated list of numbers") from exc


def _single(text, key, kind=float):
    values = _numbers(text, key, kind)
    if len(values) != 1:
        raise DomainError(f"{key} must be a single number, got {text!r}")
    return values[0]


def read_study_config(path, seed=None):
    """Read a study configuration file.

    The file holds ``key = value`` lines; blank lines and ``#`` comments are
    skipped. ``nu`` is a comma list and each entry becomes one row sharing the
    ``delta`` (gen1) or ``gamma`` (gen2) and ``lambda`` values. Example::

        model = gen1
        nu = 0.5, 0.6, 0.7, 0.8, 0.95
        delta = 0.5
        lambda = 0.5
        sample_sizes = 100, 1000, 10000
        replications = 1000

    Args:
        path (str | os.PathLike): The file to read.
        seed (int, optional): Overrides the file's ``seed`` entry.

    Returns:
        StudyConfig: The parsed configuration.

    Raises:
        DomainError: On malformed lines, unknown or missing keys, or values
            outside their domain.
    """
    with open(path, "r") as file:
        lines = file.readlines()

    entries = {}
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {number}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise DomainError(f"line {number}: duplicate key {key!r}")
        entries[key] = value

    missing = [key for key in _REQUIRED if key not in entries]
    if missing:
        raise DomainError(f"missing keys: {', '.join(missing)}")
    model = entries["model"]
    if model not in _MODELS:
        raise DomainError(f"model must be gen1 or gen2, got {model!r}")
    shape_key = _MODELS[model]
    allowed = set(_REQUIRED) | {shape_key, "seed"}
    unknown = sorted(set(entries) - allowed)
    if unknown:
        raise DomainError(f"unknown keys for {model}: {', '.join(unknown)}")
    if shape_key not in entries:
        raise DomainError(f"missing key: {shape_key}")

    shape = _single(entries[shape_key], shape_key)
    lam = _single(entries["lambda"], "lambda")
    factory = GenIParams if model == "gen1" else GenIIParams
    rows = tuple(factory(nu, shape, lam) for nu in _numbers(entries["nu"], "nu"))

    if seed is None:
        seed = _single(entries["seed"], "seed", int) if "seed" in entries else default_seed()
    return StudyConfig(
        model=model,
        rows=rows,
        sample_sizes=tuple(_numbers(entries["sample_sizes"], "sample_sizes", int)),
        replications=_single(entries["replications"], "replications", int),
        seed=int(seed),
    )
