"""
Per-account sliding-window scoring state.

Each account keeps at most T encoded feature vectors plus its last timestamp,
so memory is O(accounts x T x d) however long the stream runs. Updates to one
account are serialized by that account's lock; distinct accounts proceed
concurrently against the shared, immutable model.
"""
import threading
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from src.core.exceptions import OrderingError
from src.core.model import explain, forward
from src.core.training.serialization import ModelBundle
from src.models.events import ScoreEvent, ScoreStatus
from src.models.transaction import TransactionRecord

DEFAULT_THRESHOLD = 0.5


@dataclass
class StreamCounters:
    """Running totals reported on EOF, shutdown and /health."""

    received: int = 0
    scored: int = 0
    warmup: int = 0
    alerts: int = 0
    rejected_out_of_order: int = 0
    malformed: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class AccountBuffer:
    """Ring buffer of the last T encoded records of one account."""

    capacity: int
    features: deque = field(init=False)
    last_timestamp: Optional[float] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self.features = deque(maxlen=self.capacity)

    @property
    def full(self) -> bool:
        return len(self.features) == self.capacity


class StreamState:
    """Loaded model, alert threshold and every account's buffer."""

    def __init__(self, bundle: ModelBundle, threshold: Optional[float] = None,
                 with_attention: bool = False):
        """
        Args:
            bundle: Loaded model (params, config, frozen encoder)
            threshold: Alert threshold; defaults to the model file's best-F1 threshold, else 0.5
            with_attention: Attach per-timestep attention to scored events
        """
        self.bundle = bundle
        if threshold is None:
            threshold = bundle.threshold if bundle.threshold is not None else DEFAULT_THRESHOLD
        self.threshold = threshold
        self.with_attention = with_attention
        self.counters = StreamCounters()
        self._accounts: dict[str, AccountBuffer] = {}
        self._registry_lock = threading.Lock()
        self._counter_lock = threading.Lock()

    @property
    def window_length(self) -> int:
        return self.bundle.config.T

    @property
    def account_count(self) -> int:
        return len(self._accounts)

    def buffer(self, account_id: str) -> AccountBuffer:
        with self._registry_lock:
            buf = self._accounts.get(account_id)
            if buf is None:
                buf = AccountBuffer(self.window_length)
                self._accounts[account_id] = buf
            return buf

    def count(self, name: str, amount: int = 1) -> None:
        with self._counter_lock:
            setattr(self.counters, name, getattr(self.counters, name) + amount)


def score_record(state: StreamState, record: TransactionRecord) -> ScoreEvent:
    """
    Push one record into its account buffer and score the window if full.

    Raises:
        OrderingError: If the timestamp does not advance past the account's last one
            (the record is dropped and counted)
    """
    state.count("received")
    buf = state.buffer(record.account_id)

    with buf.lock:
        if buf.last_timestamp is not None and record.timestamp <= buf.last_timestamp:
            state.count("rejected_out_of_order")
            raise OrderingError(
                f"account {record.account_id}: timestamp {record.timestamp} "
                f"does not follow {buf.last_timestamp}"
            )
        vector = state.bundle.encoder.encode_one(record, buf.last_timestamp)
        buf.features.append(vector)
        buf.last_timestamp = record.timestamp
        window = np.vstack(buf.features) if buf.full else None

    if window is None:
        state.count("warmup")
        return ScoreEvent(
            account_id=record.account_id,
            end_timestamp=record.timestamp,
            status=ScoreStatus.WARMUP,
        )

    probability, trace = forward(window, state.bundle.params)
    alert = probability >= state.threshold
    state.count("scored")
    if alert:
        state.count("alerts")
    return ScoreEvent(
        account_id=record.account_id,
        end_timestamp=record.timestamp,
        status=ScoreStatus.SCORED,
        probability=probability,
        alert=alert,
        attention=explain(trace).tolist() if state.with_attention else None,
    )
