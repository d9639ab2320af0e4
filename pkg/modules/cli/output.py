import csv
import json
import math
from dataclasses import dataclass, field

from modules import config


def _plain(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


def _cell(value):
    if isinstance(value, float):
        return config.output["float_format"] % value
    return value


@dataclass
class OutputRecord:
    """Machine-readable result of one CLI command.

    Every CSV row repeats the parameter set, so a row read on its own still
    says what produced it.

    Attributes:
        command (str): Subcommand name.
        arguments (dict): The parsed flags.
        params (dict): Parameters tagged onto every row.
        columns (list[str]): Payload column names.
        rows (list[tuple]): Payload rows.
        rng (dict | None): Seed and stream derivation, for random output.
        extra (dict): Non-tabular results such as diagnostics.
    """

    command: str
    arguments: dict
    params: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    rng: dict | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        return _plain({
            "schema_version": config.output["schema_version"],
            "command": self.command,
            "arguments": self.arguments,
            "params": self.params,
            "rng": self.rng,
            "columns": self.columns,
            "rows": [list(row) for row in self.rows],
            **self.extra,
        })

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(list(self.params) + list(self.columns))
        prefix = [_cell(value) for value in self.params.values()]
        for row in self.rows:
            writer.writerow(prefix + [_cell(value) for value in row])

    def write_json(self, stream):
        json.dump(self.as_dict(), stream, indent=2)
        stream.write("\n")

    def write(self, stream, fmt="csv"):
        if fmt == "json":
            self.write_json(stream)
        else:
            self.write_csv(stream)
