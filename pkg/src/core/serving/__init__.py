from src.core.serving.protocol import LineOutcome, handle_line
from src.core.serving.stdin_loop import run_stdin_loop, score_stream
from src.core.serving.stream import (
    DEFAULT_THRESHOLD,
    AccountBuffer,
    StreamCounters,
    StreamState,
    score_record,
)
from src.core.serving.tcp import TcpScoringServer, parse_address, run_tcp_listener

__all__ = [
    "AccountBuffer",
    "DEFAULT_THRESHOLD",
    "LineOutcome",
    "StreamCounters",
    "StreamState",
    "TcpScoringServer",
    "handle_line",
    "parse_address",
    "run_stdin_loop",
    "run_tcp_listener",
    "score_record",
    "score_stream",
]
