"""
Dense 2-D float64 linear algebra and elementwise nonlinearities.

A ``Matrix`` is a plain numpy array of dtype float64 and rank 2. All functions
here are pure: they never mutate their inputs.
"""
from typing import TypeAlias

import numpy as np
from numpy.typing import NDArray

from src.core.exceptions import ParameterError, ShapeError
from src.core.numeric.rng import SeededRng

Matrix: TypeAlias = NDArray[np.float64]

# exp() overflows past ~709.78
_EXP_LIMIT = 700.0


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """
    Standard matrix product.

    Raises:
        ShapeError: If ``a.cols != b.rows``; carries both shapes
    """
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul dimension mismatch", a.shape, b.shape)
    return a @ b


def softmax_rows(m: Matrix) -> Matrix:
    """Row-wise softmax with per-row max subtraction."""
    shifted = m - np.max(m, axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=1, keepdims=True)


def relu(m: Matrix) -> Matrix:
    return np.maximum(m, 0.0)


def sigmoid(m: Matrix) -> Matrix:
    """Elementwise logistic function with the exponent clamped; always finite, within [0, 1]."""
    clipped = np.clip(m, -_EXP_LIMIT, _EXP_LIMIT)
    return 1.0 / (1.0 + np.exp(-clipped))


def dropout_mask(shape: tuple[int, int], rate: float, rng: SeededRng) -> Matrix:
    """
    Inverted-dropout mask.

    Each entry is 0 with probability ``rate`` and ``1/(1-rate)`` otherwise, so
    inference needs no rescaling.

    Args:
        shape: (rows, cols) of the mask
        rate: Drop probability in [0, 1)
        rng: Generator consumed for rows*cols uniforms (none when rate is 0)

    Raises:
        ParameterError: If rate is outside [0, 1)
    """
    if not 0.0 <= rate < 1.0:
        raise ParameterError(f"dropout rate must be in [0, 1), got {rate}")
    rows, cols = shape
    if rate == 0.0:
        return np.ones((rows, cols), dtype=np.float64)
    keep = rng.uniform_array(rows * cols).reshape(rows, cols) >= rate
    return keep.astype(np.float64) / (1.0 - rate)
