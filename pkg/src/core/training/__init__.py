from src.core.training.gradient_check import GradCheckReport, compare_gradients, gradient_check
from src.core.training.loss import bce_loss
from src.core.training.optimizer import AdamState, adam_step
from src.core.training.serialization import (
    FORMAT_VERSION,
    MAGIC,
    ModelBundle,
    decode_model,
    encode_model,
    load_model,
    save_model,
)
from src.core.training.trainer import TrainReport, score_windows, train

__all__ = [
    "AdamState",
    "FORMAT_VERSION",
    "GradCheckReport",
    "MAGIC",
    "ModelBundle",
    "TrainReport",
    "adam_step",
    "bce_loss",
    "compare_gradients",
    "decode_model",
    "encode_model",
    "gradient_check",
    "load_model",
    "save_model",
    "score_windows",
    "train",
]
