"""
Machine-readable report output.

CSV rows follow a fixed column order (model,auc,f1,precision,recall,threshold)
so externally produced baseline rows can be appended by hand. JSON keeps full
precision so it reads back to an equal report.
"""
import enum
import json
from pathlib import Path
from typing import Union

import pandas as pd

from src.models.reports import MetricsReport, SweepResult
from src.utils.logger import logger

CSV_COLUMNS = ["model", "auc", "f1", "precision", "recall", "threshold"]

Report = Union[MetricsReport, SweepResult]


class ReportFormat(str, enum.Enum):
    """Report file formats."""

    JSON = "json"
    CSV = "csv"


def report_rows(report: Report) -> list[MetricsReport]:
    """Flatten a report into per-model metric rows."""
    if isinstance(report, MetricsReport):
        return [report]
    return [entry.report for entry in report.entries]


def render_csv(report: Report) -> str:
    """CSV text of a report; floats with 6 decimals, header-only when empty."""
    frame = pd.DataFrame(
        [{column: getattr(row, column) for column in CSV_COLUMNS} for row in report_rows(report)],
        columns=CSV_COLUMNS,
    )
    return frame.to_csv(index=False, float_format="%.6f", lineterminator="\n")


def emit_report(report: Report, fmt: ReportFormat, path: Path) -> Path:
    """
    Write a report as JSON or CSV.

    Raises:
        OSError: If the file cannot be written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fmt = ReportFormat(fmt)

    if fmt == ReportFormat.CSV:
        path.write_text(render_csv(report), encoding="utf-8")
    else:
        kind = "metrics" if isinstance(report, MetricsReport) else "sweep"
        payload = {"kind": kind, **report.model_dump(mode="json")}
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    logger.info(f"✓ Wrote {fmt.value} report to {path}")
    return path


def load_report(path: Path) -> Report:
    """Read a JSON report written by :func:`emit_report`."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = payload.pop("kind", "metrics")
    if kind == "sweep":
        return SweepResult.model_validate(payload)
    return MetricsReport.model_validate(payload)
