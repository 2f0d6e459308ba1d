"""
Per-account sequences and sliding windows over them.
"""
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence

import numpy as np

from src.core.data.encoder import FeatureEncoder
from src.core.exceptions import ParameterError
from src.core.numeric import Matrix
from src.models.config import LabelRule
from src.models.transaction import TransactionRecord
from src.utils.logger import logger


@dataclass
class AccountSequence:
    """Encoded, time-ordered records of one account."""

    account_id: str
    features: Matrix      # N x d
    timestamps: np.ndarray  # N
    labels: np.ndarray      # N, unlabeled records count as 0

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class SequenceWindow:
    """T consecutive encoded records of one account: the model's input unit."""

    features: Matrix
    label: int
    account_id: str
    end_timestamp: float
    end_index: int  # position of the final record within its account


def encode_accounts(records: Sequence[TransactionRecord], encoder: FeatureEncoder) -> list[AccountSequence]:
    """
    Encode records grouped by account.

    Args:
        records: Records sorted by (account_id, timestamp), as ``ingest`` returns them
        encoder: Fitted encoder
    """
    sequences = []
    for account_id, group in groupby(records, key=lambda r: r.account_id):
        group = list(group)
        sequences.append(
            AccountSequence(
                account_id=account_id,
                features=encoder.encode(group),
                timestamps=np.array([r.timestamp for r in group], dtype=np.float64),
                labels=np.array([int(r.is_anomalous) for r in group], dtype=np.int64),
            )
        )
    return sequences


def window_count(n: int, T: int, stride: int) -> int:
    """Closed-form number of windows: max(0, floor((n - T) / stride) + 1)."""
    return max(0, (n - T) // stride + 1)


def windowize(
    sequences: Sequence[AccountSequence],
    T: int,
    stride: int = 1,
    label_rule: LabelRule = LabelRule.ANY,
) -> list[SequenceWindow]:
    """
    Slice every account into windows of T consecutive records.

    No window spans two accounts; accounts shorter than T contribute nothing.

    Args:
        sequences: Encoded accounts
        T: Window length (>= 1)
        stride: Step between window starts (>= 1)
        label_rule: ANY labels a window 1 if any member is anomalous; LAST uses the final record
    """
    if T < 1 or stride < 1:
        raise ParameterError(f"T and stride must be >= 1 (T={T}, stride={stride})")

    windows: list[SequenceWindow] = []
    short_accounts = 0
    for seq in sequences:
        count = window_count(len(seq), T, stride)
        if count == 0:
            short_accounts += 1
            continue
        for w in range(count):
            start = w * stride
            end = start + T
            members = seq.labels[start:end]
            label = int(members.max()) if label_rule == LabelRule.ANY else int(members[-1])
            windows.append(
                SequenceWindow(
                    features=np.ascontiguousarray(seq.features[start:end]),
                    label=label,
                    account_id=seq.account_id,
                    end_timestamp=float(seq.timestamps[end - 1]),
                    end_index=end - 1,
                )
            )

    if short_accounts:
        logger.info(f"{short_accounts} account(s) had fewer than T={T} records and produced no windows")
    logger.debug(f"Built {len(windows)} windows from {len(sequences)} accounts (T={T}, stride={stride})")
    return windows
