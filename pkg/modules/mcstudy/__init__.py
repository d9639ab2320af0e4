from .config import StudyConfig, default_seed, read_study_config
from .study import (
    StudyCell,
    CSV_COLUMNS,
    StudyResult,
    replicate,
    run_study,
    summarize_cell,
    write_csv,
    write_json,
)

__all__ = [
    "StudyConfig", "StudyCell", "StudyResult", "CSV_COLUMNS",
    "default_seed", "read_study_config",
    "replicate", "summarize_cell", "run_study",
    "write_csv", "write_json",
]
