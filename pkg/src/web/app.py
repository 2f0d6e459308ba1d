"""
HTTP front end for the streaming scorer.
"""
from pathlib import Path
from typing import Optional

import uvicorn
from fastapi import FastAPI

from src.core.serving.stream import StreamState
from src.core.serving.tcp import parse_address
from src.core.training.serialization import load_model
from src.utils.logger import logger
from src.web.routes import router


def create_app(state: StreamState) -> FastAPI:
    app = FastAPI(title="ledger-sentinel", version="0.1.0")
    app.state.stream = state
    app.include_router(router)
    return app


def run_http_server(
    model_path: Path,
    address: str,
    threshold: Optional[float] = None,
    with_attention: bool = False,
) -> int:
    """Serve /health and /score with uvicorn until interrupted."""
    host, port = parse_address(address)
    state = StreamState(load_model(model_path), threshold=threshold, with_attention=with_attention)
    logger.info(f"✓ HTTP scorer on {host}:{port}")
    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")
    return 0
