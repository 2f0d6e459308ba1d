"""
Hyperparameter sensitivity sweeps, chiefly over the attention head count.
"""
from typing import Sequence, Union

from src.core.data.dataset import Dataset
from src.core.evaluation.metrics import evaluate
from src.core.exceptions import ConfigError
from src.core.training.trainer import score_windows, train
from src.models.config import ModelConfig, TrainConfig
from src.models.reports import SweepEntry, SweepResult
from src.utils.logger import logger

SWEEPABLE = ("h", "d_h", "T", "n_blocks", "dropout_rate")

Value = Union[int, float]


def _configs(base: ModelConfig, parameter: str, values: Sequence[Value]) -> list[ModelConfig]:
    """Validate every swept config up front so nothing trains on a bad value."""
    if parameter not in SWEEPABLE:
        raise ConfigError(f"cannot sweep {parameter!r}; choose one of {', '.join(SWEEPABLE)}")
    if list(values) != sorted(set(values)):
        raise ConfigError(f"sweep values must be strictly increasing, got {list(values)}")
    return [ModelConfig.model_validate({**base.model_dump(), parameter: v}) for v in values]


def parameter_sweep(
    dataset: Dataset,
    base_cfg: ModelConfig,
    train_cfg: TrainConfig,
    parameter: str,
    values: Sequence[Value],
) -> SweepResult:
    """
    Train one model per value with the same seed and data; report test metrics.

    T sweeps rebuild the splits from the dataset's records at each window
    length; every other parameter reuses the prepared splits.

    The decision threshold of each model is its validation best-F1 threshold.

    Raises:
        ConfigError: Before any training, if a value gives an invalid config
    """
    configs = _configs(base_cfg, parameter, values)
    if parameter == "T" and not dataset.records:
        raise ConfigError("T sweeps need a dataset that keeps its records")

    entries = []
    for value, cfg in zip(values, configs):
        splits = dataset.rewindowed(cfg.T) if parameter == "T" else dataset.splits
        if not splits.test:
            raise ConfigError(f"sweep {parameter}={value} has an empty test split")
        logger.info(f"Sweep {parameter}={value}: training")
        params, report = train(splits, cfg, train_cfg)
        metrics = evaluate(
            score_windows(params, splits.test),
            threshold=report.threshold,
            model=f"{parameter}={value}",
        )
        logger.info(f"✓ Sweep {parameter}={value}: test AUC {metrics.auc:.4f}, F1 {metrics.f1:.4f}")
        entries.append(SweepEntry(value=value, report=metrics))

    best = None
    best_auc = -1.0
    for entry in entries:
        if entry.report.auc > best_auc:
            best, best_auc = entry.value, entry.report.auc

    return SweepResult(parameter=parameter, entries=entries, best=best)


def head_sweep(
    dataset: Dataset,
    base_cfg: ModelConfig,
    train_cfg: TrainConfig,
    heads: Sequence[int],
) -> SweepResult:
    """
    Attention-head sweep: one model per head count, argmax by test AUC.

    Raises:
        ConfigError: If any head count does not divide d_h (checked before training)
    """
    bad = [h for h in heads if h < 1 or base_cfg.d_h % h != 0]
    if bad:
        raise ConfigError(f"head counts {bad} do not divide d_h={base_cfg.d_h}")
    return parameter_sweep(dataset, base_cfg, train_cfg, "h", heads)
