"""
Exception hierarchy for the engine.

Every fault the library raises on purpose derives from ``SentinelError`` so the
CLI and the servers can tell handled failures from bugs.
"""
from typing import Sequence


class SentinelError(Exception):
    """Base class for all engine errors."""


class ShapeError(SentinelError):
    """Operand shapes are incompatible."""

    def __init__(self, message: str, *shapes: tuple[int, ...]):
        self.shapes = shapes
        rendered = " vs ".join(str(s) for s in shapes)
        super().__init__(f"{message}: {rendered}" if shapes else message)


class ParameterError(SentinelError):
    """A numeric parameter is outside its allowed range."""


class OracleError(SentinelError):
    """The finite-difference oracle saw a non-finite function value."""


class ConfigError(SentinelError):
    """A model, training or experiment configuration violates an invariant."""


class TraceError(SentinelError):
    """A forward trace lacks what the backward pass needs."""


class SchemaError(SentinelError):
    """An input file is missing required columns."""


class RowError(SentinelError):
    """One or more input rows failed validation."""

    def __init__(self, errors: Sequence[tuple[int, str]]):
        self.errors = list(errors)
        preview = "; ".join(f"line {line}: {msg}" for line, msg in self.errors[:5])
        more = f" (+{len(self.errors) - 5} more)" if len(self.errors) > 5 else ""
        super().__init__(f"{len(self.errors)} bad row(s): {preview}{more}")


class DataError(SentinelError):
    """A dataset is empty or unusable for the requested operation."""


class FormatError(SentinelError):
    """A model file is corrupt, truncated or of an unsupported version."""


class MetricError(SentinelError):
    """A metric is undefined for the given scores."""


class OrderingError(SentinelError):
    """A streamed record arrived out of timestamp order for its account."""


class StartupError(SentinelError):
    """A server could not start (e.g. the address cannot be bound)."""
