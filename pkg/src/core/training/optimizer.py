"""
Adaptive-moment (Adam) optimizer over ``ModelParams``.
"""
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import ParameterError, ShapeError
from src.core.model import Gradients, ModelParams
from src.models.config import TrainConfig


@dataclass
class AdamState:
    """First and second moment estimates, keyed like the parameter tensors."""

    m: Gradients
    v: Gradients

    @classmethod
    def zeros(cls, params: ModelParams) -> "AdamState":
        return cls(m=params.zeros_like(), v=params.zeros_like())


def adam_step(
    params: ModelParams,
    grads: Gradients,
    state: AdamState,
    cfg: TrainConfig,
    t: int,
) -> tuple[ModelParams, AdamState]:
    """
    One bias-corrected Adam update of every learnable tensor.

    The positional table is not a learnable tensor and is carried over as is.

    Args:
        params: Current parameters (not modified)
        grads: Gradients keyed and shaped like ``params.tensors``
        state: Moment estimates (not modified)
        cfg: Learning rate, betas and epsilon
        t: 1-based step index

    Returns:
        (new params, new state)

    Raises:
        ShapeError: If a gradient or moment does not match its parameter
    """
    if t < 1:
        raise ParameterError(f"step index must be >= 1, got {t}")

    correction1 = 1.0 - cfg.beta1 ** t
    correction2 = 1.0 - cfg.beta2 ** t
    tensors, m_new, v_new = {}, {}, {}

    for name, p in params.tensors.items():
        g = grads.get(name)
        if g is None or g.shape != p.shape or state.m[name].shape != p.shape:
            raise ShapeError(f"gradient/moment for {name} does not match its parameter",
                             p.shape, None if g is None else g.shape)
        m = cfg.beta1 * state.m[name] + (1.0 - cfg.beta1) * g
        v = cfg.beta2 * state.v[name] + (1.0 - cfg.beta2) * g * g
        m_hat = m / correction1
        v_hat = v / correction2
        tensors[name] = p - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.eps)
        m_new[name] = m
        v_new[name] = v

    return params.with_tensors(tensors), AdamState(m=m_new, v=v_new)
