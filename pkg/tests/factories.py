"""
Small builders shared across tests.
"""
from typing import Optional

from src.models.transaction import Direction, TransactionRecord


def make_record(
    account_id: str,
    timestamp: float,
    amount: float = 100.0,
    label: Optional[int] = None,
    channel: str = "card",
    direction: Direction = Direction.DEBIT,
) -> TransactionRecord:
    return TransactionRecord(
        timestamp=timestamp,
        account_id=account_id,
        amount=amount,
        direction=direction,
        channel=channel,
        counterparty=f"cp-{account_id}",
        label=label,
    )


def make_account(account_id: str, n: int, start: float = 1_600_000_000.0, gap: float = 600.0,
                 labels: Optional[list[int]] = None) -> list[TransactionRecord]:
    """``n`` records with varying amounts and gaps."""
    records = []
    t = start
    for i in range(n):
        t += gap + 37.0 * (i % 5)
        records.append(
            make_record(
                account_id,
                t,
                amount=50.0 + 13.0 * (i % 7),
                label=None if labels is None else labels[i],
                channel=("card", "wire", "ach")[i % 3],
                direction=Direction.CREDIT if i % 4 == 0 else Direction.DEBIT,
            )
        )
    return records
