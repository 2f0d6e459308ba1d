"""
Score a JSONL record stream from stdin, one event line out per record in.
"""
import json
import sys
from pathlib import Path
from typing import BinaryIO, Iterable, Optional, TextIO, Union

from src.core.serving.protocol import handle_line
from src.core.serving.stream import StreamState
from src.core.training.serialization import load_model
from src.utils.logger import logger


def _decode(line: Union[bytes, str]) -> str:
    if isinstance(line, bytes):
        return line.decode("utf-8", errors="replace")
    return line


def score_stream(
    state: StreamState,
    source: Iterable[Union[bytes, str]],
    sink: TextIO,
    errors: TextIO,
) -> None:
    """
    Score every line of ``source``; events go to ``sink``, faults to ``errors``.

    Byte lines are decoded one at a time with replacement characters, so invalid
    UTF-8 turns into a malformed line instead of ending the stream.
    """
    for line_no, line in enumerate(source, start=1):
        outcome = handle_line(state, _decode(line), line_no)
        if outcome is None:
            continue
        target = sink if outcome.event is not None else errors
        target.write(outcome.encode() + "\n")
        target.flush()


def run_stdin_loop(
    model_path: Path,
    threshold: Optional[float] = None,
    with_attention: bool = False,
    source: Optional[Union[BinaryIO, TextIO]] = None,
    sink: Optional[TextIO] = None,
    errors: Optional[TextIO] = None,
) -> int:
    """
    Load a model and score stdin until EOF.

    Writes a JSON summary of the stream counters to stderr at the end.

    Returns:
        Process exit code (0 on a clean EOF)
    """
    source = source or getattr(sys.stdin, "buffer", sys.stdin)
    sink = sink or sys.stdout
    errors = errors or sys.stderr

    bundle = load_model(model_path)
    state = StreamState(bundle, threshold=threshold, with_attention=with_attention)
    logger.info(
        f"Scoring stdin with T={bundle.config.T}, threshold={state.threshold:.6f}"
    )

    score_stream(state, source, sink, errors)

    summary = state.counters.as_dict()
    errors.write(json.dumps({"summary": summary}, separators=(",", ":")) + "\n")
    errors.flush()
    logger.info(
        f"✓ Stream closed: {summary['scored']} scored, {summary['alerts']} alerts, "
        f"{summary['rejected_out_of_order'] + summary['malformed']} rejected"
    )
    return 0
