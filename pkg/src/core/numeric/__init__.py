from src.core.numeric.gradcheck import finite_diff_grad, relative_error
from src.core.numeric.matrix import (
    Matrix,
    dropout_mask,
    matmul,
    relu,
    sigmoid,
    softmax_rows,
)
from src.core.numeric.rng import SeededRng

__all__ = [
    "Matrix",
    "SeededRng",
    "dropout_mask",
    "finite_diff_grad",
    "matmul",
    "relative_error",
    "relu",
    "sigmoid",
    "softmax_rows",
]
