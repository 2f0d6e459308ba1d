"""
Learnable parameter store for the attention classifier.

Tensors live in one ordered dict keyed by canonical names; that order is shared
by the optimizer, the gradient checker and the model file format.
"""
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import ShapeError
from src.core.numeric import Matrix, SeededRng
from src.models.config import ModelConfig

Gradients = dict[str, Matrix]


def head_name(block: int, head: int, kind: str) -> str:
    return f"blocks.{block}.heads.{head}.{kind}"


def output_name(block: int) -> str:
    return f"blocks.{block}.W_O"


def parameter_shapes(cfg: ModelConfig) -> list[tuple[str, tuple[int, int]]]:
    """Canonical (name, shape) list of every learnable tensor."""
    shapes: list[tuple[str, tuple[int, int]]] = [("W_e", (cfg.d, cfg.d_h))]
    for b in range(cfg.n_blocks):
        for i in range(cfg.h):
            for kind in ("W_Q", "W_K", "W_V"):
                shapes.append((head_name(b, i, kind), (cfg.d_h, cfg.d_k)))
        shapes.append((output_name(b), (cfg.d_h, cfg.d_h)))
    d_f = cfg.hidden_width
    shapes += [
        ("W_1", (cfg.d_h, d_f)),
        ("b_1", (1, d_f)),
        ("W_2", (d_f, 1)),
        ("b_2", (1, 1)),
    ]
    return shapes


def positional_table(T: int, d_h: int) -> Matrix:
    """Fixed sinusoidal table: P[t, 2j] = sin(t / 10000^(2j/d_h)), P[t, 2j+1] = cos(...)."""
    table = np.zeros((T, d_h), dtype=np.float64)
    positions = np.arange(T, dtype=np.float64)[:, np.newaxis]
    even = np.arange(0, d_h, 2, dtype=np.float64)
    angles = positions / np.power(10000.0, even / d_h)
    table[:, 0::2] = np.sin(angles)
    table[:, 1::2] = np.cos(angles[:, : d_h // 2])
    return table


@dataclass
class ModelParams:
    """All learnable weights plus the fixed positional table."""

    config: ModelConfig
    tensors: dict[str, Matrix]
    positional: Matrix

    def __post_init__(self):
        expected = parameter_shapes(self.config)
        if [name for name, _ in expected] != list(self.tensors):
            raise ShapeError("parameter names do not match the configuration")
        for name, shape in expected:
            if self.tensors[name].shape != shape:
                raise ShapeError(f"parameter {name} has the wrong shape", self.tensors[name].shape, shape)
        if self.positional.shape != (self.config.T, self.config.d_h):
            raise ShapeError("positional table has the wrong shape",
                             self.positional.shape, (self.config.T, self.config.d_h))

    def __getitem__(self, name: str) -> Matrix:
        return self.tensors[name]

    def head(self, block: int, head: int) -> tuple[Matrix, Matrix, Matrix]:
        """(W_Q, W_K, W_V) of one attention head."""
        return (
            self.tensors[head_name(block, head, "W_Q")],
            self.tensors[head_name(block, head, "W_K")],
            self.tensors[head_name(block, head, "W_V")],
        )

    def w_o(self, block: int) -> Matrix:
        return self.tensors[output_name(block)]

    @property
    def size(self) -> int:
        """Number of learnable scalars."""
        return sum(t.size for t in self.tensors.values())

    def flatten(self) -> np.ndarray:
        """All learnable tensors concatenated in canonical order."""
        return np.concatenate([t.ravel() for t in self.tensors.values()])

    def with_flat(self, vector: np.ndarray) -> "ModelParams":
        """New params with learnable values taken from a flat vector."""
        if vector.size != self.size:
            raise ShapeError("flat parameter vector has the wrong length", vector.shape, (self.size,))
        tensors: dict[str, Matrix] = {}
        offset = 0
        for name, t in self.tensors.items():
            tensors[name] = np.array(vector[offset:offset + t.size], dtype=np.float64).reshape(t.shape)
            offset += t.size
        return ModelParams(self.config, tensors, self.positional)

    def with_tensors(self, tensors: dict[str, Matrix]) -> "ModelParams":
        return ModelParams(self.config, tensors, self.positional)

    def copy(self) -> "ModelParams":
        return ModelParams(
            self.config,
            {name: t.copy() for name, t in self.tensors.items()},
            self.positional.copy(),
        )

    def zeros_like(self) -> Gradients:
        return {name: np.zeros_like(t) for name, t in self.tensors.items()}


def init_params(cfg: ModelConfig) -> ModelParams:
    """
    Initialize parameters deterministically from ``cfg.seed``.

    Weights are Gaussian with variance 2/(fan_in + fan_out), drawn in canonical
    order from one ``SeededRng``; biases start at zero.
    """
    rng = SeededRng(cfg.seed)
    tensors: dict[str, Matrix] = {}
    for name, (rows, cols) in parameter_shapes(cfg):
        if name.startswith("b_"):
            tensors[name] = np.zeros((rows, cols), dtype=np.float64)
            continue
        std = np.sqrt(2.0 / (rows + cols))
        tensors[name] = rng.gaussian_array(rows * cols).reshape(rows, cols) * std
    return ModelParams(cfg, tensors, positional_table(cfg.T, cfg.d_h))
