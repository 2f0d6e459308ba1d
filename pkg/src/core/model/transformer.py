"""
Forward pass of the windowed attention classifier.

Pipeline: embedding plus positional table, ``n_blocks`` multi-head
self-attention blocks with residual connections, then a pooled two-layer head
with ReLU and sigmoid. Every intermediate is kept in a trace for the backward
pass and for attention inspection.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.core.exceptions import ParameterError, ShapeError, TraceError
from src.core.model.params import ModelParams
from src.core.numeric import Matrix, SeededRng, dropout_mask, matmul, relu, sigmoid, softmax_rows
from src.models.config import Pooling


@dataclass
class HeadTrace:
    """One attention head: projections, attention weights and output."""

    q: Matrix
    k: Matrix
    v: Matrix
    weights: Matrix  # T x T, row-stochastic
    output: Matrix


@dataclass
class BlockTrace:
    """One multi-head block."""

    input: Matrix
    heads: list[HeadTrace]
    concat: Matrix
    projected: Matrix
    mask: Optional[Matrix]
    output: Matrix


@dataclass
class ClassifierTrace:
    """Pooling and the two-layer head."""

    hidden: Matrix
    pooled: Matrix
    z_pre: Matrix
    z: Matrix
    mask: Optional[Matrix]
    logit: float
    probability: float


@dataclass
class ForwardTrace:
    """All activations of one forward pass."""

    x: Matrix
    h0: Matrix
    blocks: list[BlockTrace] = field(default_factory=list)
    classifier: Optional[ClassifierTrace] = None
    training: bool = False

    @property
    def probability(self) -> float:
        if self.classifier is None:
            raise TraceError("trace has no classifier output")
        return self.classifier.probability


def _maybe_mask(shape: tuple[int, int], rate: float, training: bool,
                rng: Optional[SeededRng]) -> Optional[Matrix]:
    if not training or rate == 0.0:
        return None
    if rng is None:
        raise ParameterError("training with dropout needs an rng")
    return dropout_mask(shape, rate, rng)


def embed(x: Matrix, params: ModelParams) -> Matrix:
    """
    Input embedding: ``X W_e + P``.

    Raises:
        ShapeError: If ``x`` is not T x d for the params' configuration
    """
    cfg = params.config
    if x.shape != (cfg.T, cfg.d):
        raise ShapeError("window shape does not match the model", x.shape, (cfg.T, cfg.d))
    return matmul(x, params["W_e"]) + params.positional


def attention_head(h: Matrix, w_q: Matrix, w_k: Matrix, w_v: Matrix) -> HeadTrace:
    """Scaled dot-product attention ``softmax(QK^T / sqrt(d_k)) V`` for one head."""
    q = matmul(h, w_q)
    k = matmul(h, w_k)
    v = matmul(h, w_v)
    d_k = w_k.shape[1]
    weights = softmax_rows(matmul(q, k.T) / np.sqrt(d_k))
    return HeadTrace(q=q, k=k, v=v, weights=weights, output=matmul(weights, v))


def multi_head(
    h: Matrix,
    params: ModelParams,
    block: int = 0,
    training: bool = False,
    rng: Optional[SeededRng] = None,
) -> BlockTrace:
    """
    One multi-head self-attention block.

    Head outputs are concatenated column-wise and projected by the square W_O;
    dropout (training only) hits the projection, then the residual is added.
    """
    cfg = params.config
    heads = [attention_head(h, *params.head(block, i)) for i in range(cfg.h)]
    concat = np.concatenate([head.output for head in heads], axis=1)
    projected = matmul(concat, params.w_o(block))
    mask = _maybe_mask(projected.shape, cfg.dropout_rate, training, rng)
    dropped = projected * mask if mask is not None else projected
    return BlockTrace(
        input=h,
        heads=heads,
        concat=concat,
        projected=projected,
        mask=mask,
        output=h + dropped,
    )


def classify_head(
    hidden: Matrix,
    params: ModelParams,
    training: bool = False,
    rng: Optional[SeededRng] = None,
) -> ClassifierTrace:
    """Pool over time, then ``sigmoid(ReLU(pooled W_1 + b_1) W_2 + b_2)``."""
    cfg = params.config
    if cfg.pooling == Pooling.MEAN:
        pooled = hidden.mean(axis=0, keepdims=True)
    else:
        pooled = hidden[-1:, :].copy()
    z_pre = matmul(pooled, params["W_1"]) + params["b_1"]
    z = relu(z_pre)
    mask = _maybe_mask(z.shape, cfg.dropout_rate, training, rng)
    if mask is not None:
        z = z * mask
    logit = float((matmul(z, params["W_2"]) + params["b_2"])[0, 0])
    probability = float(sigmoid(np.array([[logit]]))[0, 0])
    return ClassifierTrace(
        hidden=hidden,
        pooled=pooled,
        z_pre=z_pre,
        z=z,
        mask=mask,
        logit=logit,
        probability=probability,
    )


def forward(
    x: Matrix,
    params: ModelParams,
    training: bool = False,
    rng: Optional[SeededRng] = None,
) -> tuple[float, ForwardTrace]:
    """
    Full forward pass over one window.

    Args:
        x: T x d feature matrix
        params: Model parameters (their config supplies the architecture)
        training: Enables dropout
        rng: Dropout generator, required when training with a nonzero rate

    Returns:
        (anomaly probability, trace of every intermediate)
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    h0 = embed(x, params)
    trace = ForwardTrace(x=x, h0=h0, training=training)
    hidden = h0
    for b in range(params.config.n_blocks):
        block = multi_head(hidden, params, b, training, rng)
        trace.blocks.append(block)
        hidden = block.output
    trace.classifier = classify_head(hidden, params, training, rng)
    return trace.probability, trace


def predict(x: Matrix, params: ModelParams) -> float:
    """Inference-mode probability for one window."""
    probability, _ = forward(x, params)
    return probability


def attention_maps(trace: ForwardTrace) -> list[np.ndarray]:
    """Per block, an h x T x T stack of attention weight matrices."""
    return [np.stack([head.weights for head in block.heads]) for block in trace.blocks]


def explain(trace: ForwardTrace) -> np.ndarray:
    """
    Attention received per timestep in the final block.

    Column means of the head-averaged attention matrix; sums to 1.
    """
    final = attention_maps(trace)[-1].mean(axis=0)
    return final.mean(axis=0)
