"""
Finite-difference verification of the analytic backward pass.
"""
from dataclasses import dataclass, field

import numpy as np

from src.core.model import ModelParams, backward, forward, init_params
from src.core.numeric import SeededRng, finite_diff_grad, relative_error
from src.core.training.loss import bce_loss
from src.models.config import ModelConfig

# Small configuration the gradient check runs on by default
GRADCHECK_CONFIG = ModelConfig(d=6, d_h=16, h=4, T=8, n_blocks=1, dropout_rate=0.0)


@dataclass
class GradCheckReport:
    """Per-tensor relative error between analytic and numeric gradients."""

    seed: int
    errors: dict[str, float] = field(default_factory=dict)

    @property
    def max_error(self) -> float:
        return max(self.errors.values(), default=0.0)

    @property
    def worst(self) -> str:
        return max(self.errors, key=self.errors.get)


def random_window(cfg: ModelConfig, rng: SeededRng) -> np.ndarray:
    return rng.gaussian_array(cfg.T * cfg.d).reshape(cfg.T, cfg.d)


def gradient_check(
    cfg: ModelConfig = GRADCHECK_CONFIG,
    seed: int = 0,
    label: int = 1,
    pos_weight: float = 1.0,
    eps: float = 1e-5,
) -> GradCheckReport:
    """
    Compare ``backward`` against central differences of forward + BCE.

    Params and the input window are drawn from ``seed``; dropout must be off
    in ``cfg`` for the comparison to be meaningful.
    """
    cfg = cfg.model_copy(update={"seed": seed})
    params = init_params(cfg)
    x = random_window(cfg, SeededRng(seed + 1))
    return GradCheckReport(seed=seed, errors=compare_gradients(params, x, label, pos_weight, eps))


def compare_gradients(
    params: ModelParams,
    x: np.ndarray,
    label: int,
    pos_weight: float = 1.0,
    eps: float = 1e-5,
) -> dict[str, float]:
    """Per-tensor relative error between backward and the finite-difference oracle."""
    _, trace = forward(x, params)
    analytic = backward(trace, params, label, pos_weight)

    def loss_at(vector: np.ndarray) -> float:
        probability, _ = forward(x, params.with_flat(vector))
        return bce_loss(probability, label, pos_weight)

    numeric = params.with_flat(finite_diff_grad(loss_at, params.flatten(), eps))
    return {name: relative_error(analytic[name], numeric[name]) for name in params.tensors}
