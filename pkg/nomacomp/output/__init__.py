"""Output module for result tables and metadata sidecars."""

from .results import (
    RANK_COLUMNS,
    RESULT_COLUMNS,
    TRACE_COLUMNS,
    format_value,
    metadata_path,
    rank_table_path,
    read_results_csv,
    traces_path,
    write_metadata,
    write_rank_table_csv,
    write_results_csv,
    write_traces_csv,
)

__all__ = [
    "RANK_COLUMNS",
    "RESULT_COLUMNS",
    "TRACE_COLUMNS",
    "format_value",
    "metadata_path",
    "rank_table_path",
    "read_results_csv",
    "traces_path",
    "write_metadata",
    "write_rank_table_csv",
    "write_results_csv",
    "write_traces_csv",
]
