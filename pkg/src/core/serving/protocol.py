"""
Line protocol shared by the stdin loop and the TCP listener.

One JSON record per input line. A successful line yields a score event; a
malformed or out-of-order line yields an error payload and the stream goes on.
"""
import json
from dataclasses import dataclass
from typing import Optional

from pydantic import ValidationError

from src.core.data.records_io import parse_record
from src.core.exceptions import OrderingError, SentinelError
from src.core.serving.stream import StreamState, score_record


@dataclass
class LineOutcome:
    """Either a score event payload or an error payload for one input line."""

    event: Optional[dict] = None
    error: Optional[dict] = None

    def encode(self) -> str:
        payload = self.event if self.event is not None else self.error
        return json.dumps(payload, separators=(",", ":"))


def _error(kind: str, message: str, line_no: Optional[int]) -> dict:
    payload = {"error": kind, "message": message}
    if line_no is not None:
        payload["line"] = line_no
    return payload


def reject_line(state: StreamState, message: str, line_no: Optional[int] = None) -> LineOutcome:
    """Count a malformed line and build its error payload."""
    state.count("malformed")
    return LineOutcome(error=_error("malformed", message, line_no))


def handle_line(state: StreamState, line: str, line_no: Optional[int] = None) -> Optional[LineOutcome]:
    """
    Parse and score one protocol line.

    Returns ``None`` for blank lines, which are ignored.
    """
    text = line.strip()
    if not text:
        return None

    try:
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise ValueError("expected a JSON object")
        record = parse_record(raw)
    except (ValueError, ValidationError, SentinelError) as e:
        # pydantic's ValidationError and json's JSONDecodeError are both ValueErrors
        return reject_line(state, str(e).splitlines()[0], line_no)

    try:
        event = score_record(state, record)
    except OrderingError as e:
        return LineOutcome(error=_error("out_of_order", str(e), line_no))

    return LineOutcome(event=event.to_wire())
