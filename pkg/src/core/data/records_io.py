"""
Reading and writing transaction ledgers as CSV or JSONL.
"""
import enum
import json
from pathlib import Path
from typing import Any, Iterable, Optional

import pandas as pd
from pydantic import ValidationError

from src.core.exceptions import RowError, SchemaError
from src.models.transaction import RECORD_FIELDS, REQUIRED_FIELDS, TransactionRecord
from src.utils.logger import logger

_BAD_ROW = "\x00<bad-row>"
_REPLACEMENT = "\ufffd"


class RecordFormat(str, enum.Enum):
    """Ledger file formats."""

    CSV = "csv"
    JSONL = "jsonl"

    @classmethod
    def from_path(cls, path: Path) -> "RecordFormat":
        """Guess the format from a file suffix (defaults to CSV)."""
        return cls.JSONL if Path(path).suffix.lower() in (".jsonl", ".ndjson") else cls.CSV


def _describe(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in e['loc']) or 'record'}: {e['msg']}" for e in error.errors()
    )


def parse_record(raw: dict[str, Any]) -> TransactionRecord:
    """Validate one raw mapping into a record (empty label means unlabeled)."""
    data = dict(raw)
    if data.get("label") in ("", None):
        data["label"] = None
    return TransactionRecord.model_validate(data)


def _read_csv_rows(path: Path) -> tuple[list[tuple[int, dict[str, Any]]], list[tuple[int, str]]]:
    options = dict(dtype=str, keep_default_na=False, encoding="utf-8", encoding_errors="replace")
    try:
        header = pd.read_csv(path, nrows=0, **options)
    except pd.errors.EmptyDataError:
        return [], []

    missing = [c for c in REQUIRED_FIELDS if c not in header.columns]
    if missing:
        raise SchemaError(f"{path}: missing required column(s) {', '.join(missing)}")

    width = len(header.columns)
    oversized: list[int] = []

    def keep_in_place(fields: list[str]) -> list[str]:
        # a placeholder row keeps the frame index aligned with file lines
        oversized.append(len(fields))
        return [_BAD_ROW] * width

    frame = pd.read_csv(path, engine="python", on_bad_lines=keep_in_place, **options)
    columns = [c for c in RECORD_FIELDS if c in frame.columns]

    rows: list[tuple[int, dict[str, Any]]] = []
    errors: list[tuple[int, str]] = []
    seen = iter(oversized)
    # header is line 1
    for line_no, row in enumerate(frame.to_dict("records"), start=2):
        if row[header.columns[0]] == _BAD_ROW:
            errors.append((line_no, f"expected {width} fields, saw {next(seen)}"))
        elif any(isinstance(v, str) and _REPLACEMENT in v for v in row.values()):
            errors.append((line_no, "invalid UTF-8"))
        else:
            rows.append((line_no, {c: row[c] for c in columns}))
    return rows, errors


def _read_jsonl_rows(path: Path) -> tuple[list[tuple[int, dict[str, Any]]], list[tuple[int, str]]]:
    rows: list[tuple[int, dict[str, Any]]] = []
    errors: list[tuple[int, str]] = []
    with open(path, "rb") as f:
        for line_no, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                errors.append((line_no, "invalid UTF-8"))
                continue
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                errors.append((line_no, f"invalid JSON: {e.msg}"))
                continue
            if not isinstance(obj, dict):
                errors.append((line_no, "expected a JSON object"))
                continue
            rows.append((line_no, obj))
    return rows, errors


def ingest(
    path: Path,
    fmt: Optional[RecordFormat] = None,
    skip_bad: bool = False,
) -> list[TransactionRecord]:
    """
    Load a ledger file.

    Args:
        path: CSV (header required) or JSONL file
        fmt: File format; guessed from the suffix when omitted
        skip_bad: Log and drop bad rows instead of failing

    Returns:
        Records sorted by (account_id, timestamp)

    Raises:
        SchemaError: If a CSV file lacks required columns
        RowError: If any row is invalid and ``skip_bad`` is off
    """
    path = Path(path)
    fmt = RecordFormat(fmt) if fmt is not None else RecordFormat.from_path(path)

    if fmt == RecordFormat.CSV:
        rows, errors = _read_csv_rows(path)
    else:
        rows, errors = _read_jsonl_rows(path)

    parsed: list[tuple[int, TransactionRecord]] = []
    for line_no, raw in rows:
        try:
            parsed.append((line_no, parse_record(raw)))
        except ValidationError as e:
            errors.append((line_no, _describe(e)))

    parsed.sort(key=lambda item: (item[1].account_id, item[1].timestamp, item[0]))

    records: list[TransactionRecord] = []
    for line_no, record in parsed:
        previous = records[-1] if records else None
        if previous is not None and previous.account_id == record.account_id \
                and previous.timestamp == record.timestamp:
            errors.append((line_no, f"duplicate timestamp {record.timestamp} for account {record.account_id}"))
            continue
        records.append(record)

    if errors:
        errors.sort()
        if not skip_bad:
            logger.error(f"{path}: {len(errors)} bad row(s)")
            raise RowError(errors)
        for line_no, message in errors:
            logger.warning(f"{path}:{line_no}: skipped bad row ({message})")

    if not records:
        logger.warning(f"No records found in {path}")
    else:
        accounts = len({r.account_id for r in records})
        logger.info(f"✓ Ingested {len(records)} records across {accounts} accounts from {path}")

    return records


def write_records(
    records: Iterable[TransactionRecord],
    path: Path,
    fmt: Optional[RecordFormat] = None,
) -> int:
    """
    Write records as CSV (17 significant digits) or JSONL.

    Returns:
        Number of records written
    """
    path = Path(path)
    fmt = RecordFormat(fmt) if fmt is not None else RecordFormat.from_path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = list(records)

    if fmt == RecordFormat.JSONL:
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(record.model_dump_json() + "\n")
    else:
        frame = pd.DataFrame(
            [
                {
                    "timestamp": r.timestamp,
                    "account_id": r.account_id,
                    "amount": r.amount,
                    "direction": r.direction.value,
                    "channel": r.channel,
                    "counterparty": r.counterparty,
                    "label": "" if r.label is None else str(r.label),
                }
                for r in records
            ],
            columns=list(RECORD_FIELDS),
        )
        frame.to_csv(path, index=False, float_format="%.17g")

    logger.info(f"✓ Wrote {len(records)} records to {path}")
    return len(records)
