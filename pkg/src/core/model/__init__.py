from src.core.model.backward import backward
from src.core.model.params import (
    Gradients,
    ModelParams,
    init_params,
    parameter_shapes,
    positional_table,
)
from src.core.model.transformer import (
    BlockTrace,
    ClassifierTrace,
    ForwardTrace,
    HeadTrace,
    attention_head,
    attention_maps,
    classify_head,
    embed,
    explain,
    forward,
    multi_head,
    predict,
)

__all__ = [
    "BlockTrace",
    "ClassifierTrace",
    "ForwardTrace",
    "Gradients",
    "HeadTrace",
    "ModelParams",
    "attention_head",
    "attention_maps",
    "backward",
    "classify_head",
    "embed",
    "explain",
    "forward",
    "init_params",
    "multi_head",
    "parameter_shapes",
    "positional_table",
    "predict",
]
