"""
Streaming score events.
"""
import enum
from typing import Optional

from pydantic import BaseModel, model_validator


class ScoreStatus(str, enum.Enum):
    """Whether the account buffer was full enough to score."""

    WARMUP = "warmup"
    SCORED = "scored"


class ScoreEvent(BaseModel):
    """
    Result of scoring one arriving record.

    ``probability`` is present iff ``status`` is scored; ``attention`` is only
    filled when the scorer runs with explanations enabled.
    """

    account_id: str
    end_timestamp: float
    status: ScoreStatus
    probability: Optional[float] = None
    alert: bool = False
    attention: Optional[list[float]] = None

    @model_validator(mode="after")
    def _check_status(self):
        if self.status == ScoreStatus.WARMUP and self.probability is not None:
            raise ValueError("warmup events carry no probability")
        if self.status == ScoreStatus.SCORED and self.probability is None:
            raise ValueError("scored events need a probability")
        if self.alert and self.status != ScoreStatus.SCORED:
            raise ValueError("only scored events can alert")
        return self

    def to_wire(self) -> dict:
        """JSONL payload: probability rounded to 6 decimals and omitted for warmup."""
        payload: dict = {
            "account_id": self.account_id,
            "end_timestamp": self.end_timestamp,
            "status": self.status.value,
        }
        if self.probability is not None:
            payload["probability"] = round(self.probability, 6)
        payload["alert"] = self.alert
        if self.attention is not None:
            payload["attention"] = [round(a, 6) for a in self.attention]
        return payload
