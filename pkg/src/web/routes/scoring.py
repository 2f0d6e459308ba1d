"""
Scoring endpoints over the shared stream state.
"""
from fastapi import APIRouter, HTTPException, Request, status

from src.core.exceptions import OrderingError
from src.core.serving.stream import StreamState, score_record
from src.models.transaction import TransactionRecord

router = APIRouter()


def _state(request: Request) -> StreamState:
    return request.app.state.stream


@router.get("/health")
def health(request: Request) -> dict:
    state = _state(request)
    return {
        "status": "ok",
        "window_length": state.window_length,
        "threshold": state.threshold,
        "accounts": state.account_count,
        "counters": state.counters.as_dict(),
    }


@router.post("/score")
def score(record: TransactionRecord, request: Request) -> dict:
    """Score one record; 409 when it does not advance its account's clock."""
    try:
        event = score_record(_state(request), record)
    except OrderingError as e:
        raise HTTPException(status_code=status.HTTP_409_CONFLICT, detail=str(e))
    return event.to_wire()
