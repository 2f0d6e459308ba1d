"""
Central finite-difference gradient oracle.
"""
import math
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from src.core.exceptions import OracleError, ParameterError

Vector = NDArray[np.float64]


def finite_diff_grad(
    f: Callable[[Vector], float],
    at: Vector,
    eps: float = 1e-5,
) -> Vector:
    """
    Estimate the gradient of a scalar function by central differences.

    Args:
        f: Scalar-valued function of a 1-D parameter vector
        at: Point to differentiate at (not modified)
        eps: Step size, must be positive

    Returns:
        Vector of ``(f(x + eps*e_i) - f(x - eps*e_i)) / (2*eps)``

    Raises:
        ParameterError: If eps is not positive
        OracleError: If f returns a non-finite value
    """
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")

    x = np.array(at, dtype=np.float64).ravel()
    grad = np.zeros_like(x)

    for i in range(x.size):
        original = x[i]
        x[i] = original + eps
        plus = f(x.copy())
        x[i] = original - eps
        minus = f(x.copy())
        x[i] = original
        if not (math.isfinite(plus) and math.isfinite(minus)):
            raise OracleError(f"non-finite function value at coordinate {i}")
        grad[i] = (plus - minus) / (2.0 * eps)

    return grad


def relative_error(analytic: Vector, numeric: Vector) -> float:
    """Norm-wise relative error ``|a - n| / (|a| + |n|)``; 0 when both vanish."""
    a = np.asarray(analytic, dtype=np.float64).ravel()
    n = np.asarray(numeric, dtype=np.float64).ravel()
    denom = np.linalg.norm(a) + np.linalg.norm(n)
    if denom < 1e-12:
        return 0.0
    return float(np.linalg.norm(a - n) / denom)
