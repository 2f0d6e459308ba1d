"""
TCP listener for the line protocol.

Each connection speaks the same newline-delimited JSON as stdin; results (and
error payloads) are written back on the same connection. Connections share one
``StreamState``. Scoring runs in worker threads so the event loop keeps
accepting while windows are scored.
"""
import asyncio
import json
import signal
import sys
from contextlib import suppress
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from src.core.exceptions import ConfigError, StartupError
from src.core.serving.protocol import handle_line, reject_line
from src.core.serving.stream import StreamState
from src.core.training.serialization import load_model
from src.utils.logger import logger

MAX_LINE_BYTES = 1 << 20


def parse_address(address: str, default_host: str = "127.0.0.1") -> tuple[str, int]:
    """Split ``HOST:PORT`` (or ``:PORT``) into its parts."""
    host, sep, port_text = address.rpartition(":")
    if not sep:
        raise ConfigError(f"address must look like HOST:PORT, got {address!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise ConfigError(f"invalid port in {address!r}")
    if not 0 <= port <= 65535:
        raise ConfigError(f"port out of range in {address!r}")
    return host or default_host, port


@dataclass(eq=False)
class _Connection:
    writer: asyncio.StreamWriter
    task: asyncio.Task
    busy: bool = False


class TcpScoringServer:
    """Asyncio server scoring protocol lines against a shared stream state."""

    def __init__(self, state: StreamState, host: str, port: int, line_limit: int = MAX_LINE_BYTES):
        self.state = state
        self.host = host
        self.port = port
        self.line_limit = line_limit
        self._server: Optional[asyncio.AbstractServer] = None
        self._connections: set[_Connection] = set()
        self._closing = False

    @property
    def address(self) -> tuple[str, int]:
        """Bound address; the real port when started with port 0."""
        if self._server is None or not self._server.sockets:
            return self.host, self.port
        name = self._server.sockets[0].getsockname()
        return name[0], name[1]

    async def start(self) -> None:
        try:
            self._server = await asyncio.start_server(
                self._handle, self.host, self.port, limit=self.line_limit
            )
        except OSError as e:
            raise StartupError(f"cannot listen on {self.host}:{self.port}: {e}") from e
        host, port = self.address
        logger.info(f"✓ Listening on {host}:{port}")

    async def _handle(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        conn = _Connection(writer=writer, task=asyncio.current_task())
        self._connections.add(conn)
        peer = writer.get_extra_info("peername")
        logger.debug(f"Connection from {peer}")

        try:
            while not self._closing:
                try:
                    raw = await reader.readline()
                except ConnectionError:
                    break
                except ValueError:
                    # readline discards the overlong data; the connection stays usable
                    outcome = reject_line(self.state, f"line exceeds {self.line_limit} bytes")
                    writer.write((outcome.encode() + "\n").encode("utf-8"))
                    await writer.drain()
                    continue
                if not raw:
                    break

                conn.busy = True
                outcome = await asyncio.to_thread(
                    handle_line, self.state, raw.decode("utf-8", errors="replace")
                )
                if outcome is not None:
                    writer.write((outcome.encode() + "\n").encode("utf-8"))
                    await writer.drain()
                conn.busy = False
        except ConnectionError:
            logger.debug(f"Connection from {peer} dropped")
        finally:
            self._connections.discard(conn)
            writer.close()
            with suppress(ConnectionError):
                await writer.wait_closed()

    async def shutdown(self) -> None:
        """Stop accepting, let in-flight lines finish, then close every connection."""
        self._closing = True
        if self._server is not None:
            self._server.close()

        pending = list(self._connections)
        for conn in pending:
            if not conn.busy:
                conn.writer.close()
        if pending:
            await asyncio.gather(*(c.task for c in pending), return_exceptions=True)

        if self._server is not None:
            await self._server.wait_closed()
        logger.info("✓ Listener stopped")


async def _serve(state: StreamState, host: str, port: int) -> None:
    server = TcpScoringServer(state, host, port)
    await server.start()

    stop = asyncio.Event()
    loop = asyncio.get_running_loop()
    for sig in (signal.SIGINT, signal.SIGTERM):
        with suppress(NotImplementedError):
            loop.add_signal_handler(sig, stop.set)

    try:
        await stop.wait()
    finally:
        await server.shutdown()


def run_tcp_listener(
    model_path: Path,
    address: str,
    threshold: Optional[float] = None,
    with_attention: bool = False,
) -> int:
    """
    Serve the line protocol on ``address`` until SIGINT/SIGTERM.

    Raises:
        StartupError: If the address cannot be bound
    """
    host, port = parse_address(address)
    bundle = load_model(model_path)
    state = StreamState(bundle, threshold=threshold, with_attention=with_attention)

    asyncio.run(_serve(state, host, port))

    summary = state.counters.as_dict()
    sys.stderr.write(json.dumps({"summary": summary}, separators=(",", ":")) + "\n")
    sys.stderr.flush()
    return 0
