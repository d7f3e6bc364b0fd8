"""CSV tables and JSON sidecars of experiment runs."""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Sequence
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .. import __version__
from ..config import DESIGN_DECISIONS
from ..errors import NomaCompError
from ..evaluation import RankRow, TrialOutcome, TrialRecord
from ..utils.hasher import compute_sha256, config_digest

RESULT_COLUMNS = (
    "sweep_value",
    "scheme",
    "trial",
    "seed",
    "sum_rate_group1",
    "feasible",
    "qos_violations",
    "iterations",
    "min_R_lambda",
    "wall_time_ms",
    "outcome",
)
TRACE_COLUMNS = ("sweep_value", "scheme", "trial", "iteration", "objective_bits")
RANK_COLUMNS = ("M", "K", "average", "maximum", "minimum")


def format_value(value: Any) -> str:
    """Round-trip text for floats, lowercase booleans, plain ints and strings."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def traces_path(out: Path) -> Path:
    return out.with_name(f"{out.stem}_traces.csv")


def rank_table_path(out: Path) -> Path:
    return out.with_name(f"{out.stem}_rank_table.csv")


def metadata_path(out: Path) -> Path:
    return out.with_suffix(".json")


def _write_rows(path: Path, header: Sequence[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def write_results_csv(records: Sequence[TrialRecord], path: Path) -> Path:
    return _write_rows(path, RESULT_COLUMNS, (
        [getattr(r, column) for column in RESULT_COLUMNS] for r in records
    ))


def write_traces_csv(records: Sequence[TrialRecord], path: Path) -> Path:
    rows = (
        [r.sweep_value, r.scheme, r.trial, m, value]
        for r in records
        for m, value in enumerate(r.objective_trace, start=1)
    )
    return _write_rows(path, TRACE_COLUMNS, rows)


def write_rank_table_csv(table: Sequence[RankRow], path: Path) -> Path:
    rows = (
        [row.antennas, row.clusters, row.stats.average, row.stats.maximum, row.stats.minimum]
        for row in table
    )
    return _write_rows(path, RANK_COLUMNS, rows)


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


def _parse_outcome(text: str) -> str:
    return TrialOutcome(text).value


def read_results_csv(path: Path) -> list[TrialRecord]:
    """Load a results table written by write_results_csv."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        missing = set(RESULT_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise NomaCompError(f"{path}: missing column(s) {', '.join(sorted(missing))}")
        records = []
        for line, row in enumerate(reader, start=2):
            try:
                records.append(TrialRecord(
                    sweep_value=float(row["sweep_value"]),
                    scheme=row["scheme"],
                    trial=int(row["trial"]),
                    seed=int(row["seed"]),
                    sum_rate_group1=float(row["sum_rate_group1"]),
                    feasible=_parse_bool(row["feasible"]),
                    qos_violations=int(row["qos_violations"]),
                    iterations=int(row["iterations"]),
                    min_R_lambda=float(row["min_R_lambda"]),
                    wall_time_ms=float(row["wall_time_ms"]),
                    outcome=_parse_outcome(row["outcome"]),
                ))
            except ValueError as e:
                raise NomaCompError(f"{path}:{line}: {e}") from e
    return records


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return repr(float(value))
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def write_metadata(
    path: Path,
    experiment: dict[str, Any],
    artifacts: dict[str, Path],
    solver: str,
    started_at: datetime | None = None,
) -> Path:
    """JSON sidecar with everything needed to rerun and attribute the rows."""
    base = experiment["base_config"]
    data = {
        "generator": f"nomacomp {__version__}",
        "experiment": experiment,
        "config_sha256": config_digest(base),
        "design_decisions": DESIGN_DECISIONS,
        "solver": solver,
        "artifacts": {
            name: {"path": str(p), "sha256": compute_sha256(p)} for name, p in artifacts.items()
        },
    }
    if started_at is not None:
        data["started_at"] = started_at.astimezone(timezone.utc).isoformat()
    path = Path(path)
    path.write_text(json.dumps(_json_safe(data), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
