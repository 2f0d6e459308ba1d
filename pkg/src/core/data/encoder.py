"""
Feature encoder turning transaction records into fixed-width vectors.

Feature layout (fixed so ``d`` is reproducible):

- standardized: ``log_amount`` and ``log_gap`` (log1p of seconds since the
  account's previous record); zero-variance ones are dropped at fit time
- raw: ``credit`` (1 for credit, 0 for debit), ``hour_sin``, ``hour_cos``
- one-hot channel over the fitted vocabulary plus one out-of-vocabulary bucket
"""
import math
from typing import Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core.exceptions import DataError
from src.models.transaction import Direction, TransactionRecord
from src.utils.logger import logger

STANDARDIZED_FEATURES = ("log_amount", "log_gap")
RAW_FEATURES = ("credit", "hour_sin", "hour_cos")
OOV_CHANNEL = "<oov>"
_MIN_STD = 1e-12
_SECONDS_PER_DAY = 86400.0


def _standardizable(record: TransactionRecord, previous_timestamp: Optional[float]) -> dict[str, float]:
    gap = 0.0 if previous_timestamp is None else max(record.timestamp - previous_timestamp, 0.0)
    return {
        "log_amount": math.log(record.amount),
        "log_gap": math.log1p(gap),
    }


def _raw(record: TransactionRecord) -> list[float]:
    hour = (record.timestamp % _SECONDS_PER_DAY) / 3600.0
    angle = 2.0 * math.pi * hour / 24.0
    return [
        1.0 if record.direction == Direction.CREDIT else 0.0,
        math.sin(angle),
        math.cos(angle),
    ]


def _previous_timestamps(records: Sequence[TransactionRecord]) -> list[Optional[float]]:
    """Timestamp of each record's predecessor within its account (list order)."""
    last: dict[str, float] = {}
    previous: list[Optional[float]] = []
    for record in records:
        previous.append(last.get(record.account_id))
        last[record.account_id] = record.timestamp
    return previous


class FeatureEncoder(BaseModel):
    """Fitted standardization statistics and channel vocabulary."""

    model_config = ConfigDict(frozen=True)

    means: dict[str, float]
    stds: dict[str, float]
    dropped: list[str] = []
    channels: list[str]

    @property
    def standardized(self) -> list[str]:
        return [name for name in STANDARDIZED_FEATURES if name not in self.dropped]

    @property
    def feature_names(self) -> list[str]:
        return (
            self.standardized
            + list(RAW_FEATURES)
            + [f"channel={c}" for c in self.channels]
            + [f"channel={OOV_CHANNEL}"]
        )

    @property
    def dimension(self) -> int:
        return len(self.standardized) + len(RAW_FEATURES) + len(self.channels) + 1

    def channel_index(self, channel: str) -> int:
        """Vocabulary index, or the OOV bucket for unseen channels."""
        try:
            return self.channels.index(channel)
        except ValueError:
            return len(self.channels)

    def encode_one(self, record: TransactionRecord, previous_timestamp: Optional[float]) -> np.ndarray:
        """
        Encode a single record given its account's previous timestamp.

        Shared by batch encoding and streaming so both produce identical vectors.
        """
        numeric = _standardizable(record, previous_timestamp)
        standardized = [(numeric[name] - self.means[name]) / self.stds[name] for name in self.standardized]
        one_hot = [0.0] * (len(self.channels) + 1)
        one_hot[self.channel_index(record.channel)] = 1.0
        return np.array(standardized + _raw(record) + one_hot, dtype=np.float64)

    def encode(self, records: Sequence[TransactionRecord]) -> np.ndarray:
        """
        Encode records (grouped by account, in time order) into an N x d matrix.
        """
        if not records:
            return np.zeros((0, self.dimension), dtype=np.float64)
        previous = _previous_timestamps(records)
        return np.vstack([self.encode_one(r, p) for r, p in zip(records, previous)])


def fit_encoder(records: Iterable[TransactionRecord]) -> FeatureEncoder:
    """
    Fit standardization statistics (population std) and the channel vocabulary.

    Raises:
        DataError: If no records are given
    """
    records = list(records)
    if not records:
        raise DataError("cannot fit an encoder on an empty record set")

    previous = _previous_timestamps(records)
    columns = {name: [] for name in STANDARDIZED_FEATURES}
    for record, prev in zip(records, previous):
        for name, value in _standardizable(record, prev).items():
            columns[name].append(value)

    means: dict[str, float] = {}
    stds: dict[str, float] = {}
    dropped: list[str] = []
    for name in STANDARDIZED_FEATURES:
        values = np.array(columns[name], dtype=np.float64)
        std = float(np.std(values))
        if std < _MIN_STD:
            dropped.append(name)
            continue
        means[name] = float(np.mean(values))
        stds[name] = std

    if dropped:
        logger.warning(f"Dropped zero-variance features: {', '.join(dropped)}")

    encoder = FeatureEncoder(
        means=means,
        stds=stds,
        dropped=dropped,
        channels=sorted({r.channel for r in records}),
    )
    logger.info(f"✓ Fitted encoder on {len(records)} records: d={encoder.dimension}")
    return encoder
