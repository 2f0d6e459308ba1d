"""
Transaction record: one ledger entry.
"""
import enum
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator

# Column order for CSV files; label is optional on input
RECORD_FIELDS = ("timestamp", "account_id", "amount", "direction", "channel", "counterparty", "label")
REQUIRED_FIELDS = RECORD_FIELDS[:-1]


class Direction(str, enum.Enum):
    """Flow direction of a ledger entry."""

    DEBIT = "debit"
    CREDIT = "credit"


class TransactionRecord(BaseModel):
    """
    One ledger entry.

    Timestamps are seconds since the epoch (UTC); amounts are positive
    currency units.
    """

    model_config = ConfigDict(frozen=True)

    timestamp: float
    account_id: str
    amount: float
    direction: Direction
    channel: str
    counterparty: str
    label: Optional[int] = None

    @field_validator("timestamp")
    @classmethod
    def _non_negative_timestamp(cls, v: float) -> float:
        if not (math.isfinite(v) and v >= 0):
            raise ValueError("timestamp must be finite and >= 0")
        return v

    @field_validator("amount")
    @classmethod
    def _positive_amount(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError("amount must be positive and finite")
        return v

    @field_validator("label")
    @classmethod
    def _binary_label(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v not in (0, 1):
            raise ValueError("label must be 0 or 1")
        return v

    @field_validator("account_id")
    @classmethod
    def _non_empty_account(cls, v: str) -> str:
        if not v:
            raise ValueError("account_id must be non-empty")
        return v

    @property
    def is_anomalous(self) -> bool:
        return self.label == 1
