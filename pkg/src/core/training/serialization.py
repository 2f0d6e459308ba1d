"""
Versioned model file format.

Layout (little-endian)::

    b"LSNT" | u16 format version | u32 header length | header JSON | tensor payloads

The header is canonical JSON (sorted keys, compact separators) holding the
model config, the frozen feature encoder, the alert threshold and a manifest
of tensor names and shapes. Payloads are raw float64 values in manifest order,
so a save/load round trip is bit-exact.
"""
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import ValidationError

from src.core.data.encoder import FeatureEncoder
from src.core.exceptions import FormatError, ShapeError
from src.core.model import ModelParams
from src.models.config import ModelConfig
from src.utils.logger import logger

MAGIC = b"LSNT"
FORMAT_VERSION = 1
POSITIONAL_TENSOR = "P"
_PREFIX = struct.Struct("<4sHI")


@dataclass
class ModelBundle:
    """Everything needed to score: params, config, frozen encoder and threshold."""

    params: ModelParams
    config: ModelConfig
    encoder: FeatureEncoder
    threshold: Optional[float] = None


def canonical_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("utf-8")


def encode_model(
    params: ModelParams,
    encoder: FeatureEncoder,
    threshold: Optional[float] = None,
) -> bytes:
    """Serialize a model to bytes."""
    tensors = list(params.tensors.items()) + [(POSITIONAL_TENSOR, params.positional)]
    header = {
        "config": params.config.model_dump(mode="json"),
        "encoder": encoder.model_dump(mode="json"),
        "threshold": threshold,
        "tensors": [{"name": name, "shape": list(t.shape)} for name, t in tensors],
    }
    header_bytes = canonical_json(header)
    payload = b"".join(np.ascontiguousarray(t, dtype="<f8").tobytes() for _, t in tensors)
    return _PREFIX.pack(MAGIC, FORMAT_VERSION, len(header_bytes)) + header_bytes + payload


def decode_model(blob: bytes) -> ModelBundle:
    """
    Parse model bytes.

    Raises:
        FormatError: On wrong magic, unsupported version, truncation or a corrupt header
        ConfigError: If the stored config breaks a model invariant
    """
    if len(blob) < _PREFIX.size:
        raise FormatError(f"truncated model file: {len(blob)} bytes is shorter than the fixed prefix")
    magic, version, header_len = _PREFIX.unpack_from(blob)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}, expected {FORMAT_VERSION}")

    body = blob[_PREFIX.size:]
    if len(body) < header_len:
        raise FormatError("truncated model file: header is incomplete")
    try:
        header = json.loads(body[:header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise FormatError(f"corrupt model header: {e}") from e

    try:
        # ConfigError from invariant checks propagates unchanged
        config = ModelConfig.model_validate(header["config"])
        encoder = FeatureEncoder.model_validate(header["encoder"])
        manifest = [(entry["name"], tuple(entry["shape"])) for entry in header["tensors"]]
        threshold = header.get("threshold")
    except (KeyError, TypeError, ValidationError) as e:
        raise FormatError(f"corrupt model header: {e}") from e

    expected_bytes = 8 * sum(int(np.prod(shape)) for _, shape in manifest)
    payload = body[header_len:]
    if len(payload) < expected_bytes:
        raise FormatError(f"truncated model file: {len(payload)} of {expected_bytes} payload bytes")
    if len(payload) > expected_bytes:
        raise FormatError(f"model file has {len(payload) - expected_bytes} trailing bytes")

    tensors: dict[str, np.ndarray] = {}
    offset = 0
    for name, shape in manifest:
        count = int(np.prod(shape))
        values = np.frombuffer(payload, dtype="<f8", count=count, offset=offset)
        tensors[name] = values.astype(np.float64).reshape(shape)
        offset += 8 * count

    positional = tensors.pop(POSITIONAL_TENSOR, None)
    if positional is None:
        raise FormatError("model file has no positional table")
    try:
        params = ModelParams(config, tensors, positional)
    except ShapeError as e:
        raise FormatError(f"tensor manifest does not match the config: {e}") from e

    return ModelBundle(params=params, config=config, encoder=encoder, threshold=threshold)


def save_model(
    params: ModelParams,
    encoder: FeatureEncoder,
    path: Path,
    threshold: Optional[float] = None,
) -> Path:
    """Write a model file (the config travels inside ``params``)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_model(params, encoder, threshold))
    logger.info(f"✓ Saved model to {path} ({params.size} parameters)")
    return path


def load_model(path: Path) -> ModelBundle:
    """Read a model file written by :func:`save_model`."""
    bundle = decode_model(Path(path).read_bytes())
    logger.info(f"✓ Loaded model from {path} (d={bundle.config.d}, h={bundle.config.h}, T={bundle.config.T})")
    return bundle
