"""
Weighted binary cross-entropy.
"""
import math

PROBABILITY_FLOOR = 1e-7


def bce_loss(y_hat: float, y: int, pos_weight: float = 1.0) -> float:
    """
    ``-[pos_weight * y * ln(p) + (1 - y) * ln(1 - p)]`` with p clamped to [1e-7, 1 - 1e-7].
    """
    p = min(max(y_hat, PROBABILITY_FLOOR), 1.0 - PROBABILITY_FLOOR)
    return -(pos_weight * y * math.log(p) + (1 - y) * math.log(1.0 - p))
