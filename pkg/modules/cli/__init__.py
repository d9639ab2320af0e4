from .commands import (
    EVAL_KINDS,
    cmd_estimate,
    cmd_eval,
    cmd_figure,
    cmd_simulate,
    cmd_study,
    cmd_validate,
    make_params,
    read_waiting_times,
    render,
)
from .output import OutputRecord
from .validate import CheckResult, run_suite

__all__ = [
    "OutputRecord", "CheckResult", "EVAL_KINDS",
    "cmd_eval", "cmd_simulate", "cmd_estimate", "cmd_validate", "cmd_study", "cmd_figure",
    "make_params", "read_waiting_times", "render", "run_suite",
]
