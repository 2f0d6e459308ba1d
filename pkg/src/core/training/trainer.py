"""
Mini-batch training loop with early stopping on validation AUC.
"""
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from src.core.data.dataset import WindowSplits
from src.core.data.windows import SequenceWindow
from src.core.evaluation.metrics import auc, best_f1_threshold
from src.core.exceptions import DataError
from src.core.model import ModelParams, backward, forward, init_params, predict
from src.core.numeric import SeededRng
from src.core.training.loss import bce_loss
from src.core.training.optimizer import AdamState, adam_step
from src.models.config import ModelConfig, TrainConfig
from src.utils.logger import logger

# Decorrelates the dropout stream from the shuffling stream of the same seed
_DROPOUT_STREAM = 0x5DEECE66D


@dataclass
class TrainReport:
    """
    Per-epoch history of one training run.

    ``best_epoch`` is 1-based; 0 means no epoch ran. Wall-clock time is
    excluded from equality so identical runs compare equal.
    """

    train_loss: list[float] = field(default_factory=list)
    validation_loss: list[float] = field(default_factory=list)
    validation_auc: list[float] = field(default_factory=list)
    best_epoch: int = 0
    best_validation_auc: Optional[float] = None
    threshold: Optional[float] = None
    pos_weight: float = 1.0
    wall_clock_seconds: float = field(default=0.0, compare=False)

    @property
    def epochs_run(self) -> int:
        return len(self.train_loss)


def score_windows(params: ModelParams, windows: Sequence[SequenceWindow]) -> list[tuple[float, int]]:
    """Inference-mode (score, label) pairs in window order."""
    return [(predict(w.features, params), w.label) for w in windows]


def _resolve_pos_weight(train_cfg: TrainConfig, windows: Sequence[SequenceWindow]) -> float:
    if train_cfg.pos_weight is not None:
        return train_cfg.pos_weight
    n_pos = sum(w.label for w in windows)
    n_neg = len(windows) - n_pos
    if n_pos == 0:
        logger.warning("Training split has no positive windows; using pos_weight=1")
        return 1.0
    return n_neg / n_pos


def train(
    splits: WindowSplits,
    model_cfg: ModelConfig,
    train_cfg: TrainConfig,
) -> tuple[ModelParams, TrainReport]:
    """
    Train the classifier with Adam on weighted BCE.

    Each epoch shuffles the training windows with the run seed, steps once per
    mini-batch on gradients averaged in example order, then scores the
    validation windows. Training stops when validation AUC has not improved
    for ``patience`` epochs; the parameters of the best epoch are returned.

    Args:
        splits: Chronological window splits (train and validation are used)
        model_cfg: Architecture, including the encoder's feature dimension
        train_cfg: Optimizer and loop settings

    Returns:
        (best parameters, training report)

    Raises:
        DataError: If the train or validation split is empty or validation lacks a class
    """
    if not splits.train or not splits.validation:
        raise DataError(
            f"training needs non-empty train and validation splits "
            f"(got {len(splits.train)} / {len(splits.validation)})"
        )
    n_val_pos = WindowSplits.positives(splits.validation)
    if n_val_pos in (0, len(splits.validation)):
        raise DataError("validation split needs both classes for AUC-based early stopping")

    started = time.perf_counter()
    params = init_params(model_cfg)
    pos_weight = _resolve_pos_weight(train_cfg, splits.train)
    report = TrainReport(pos_weight=pos_weight)

    if train_cfg.epochs == 0:
        logger.info("epochs=0: returning initialized parameters")
        return params, report

    shuffle_rng = SeededRng(train_cfg.seed)
    dropout_rng = SeededRng(train_cfg.seed ^ _DROPOUT_STREAM)
    state = AdamState.zeros(params)
    step = 0
    best_params = params.copy()
    best_auc = -1.0
    stale = 0
    n = len(splits.train)

    logger.info(
        f"Training on {n} windows ({WindowSplits.positives(splits.train)} pos), "
        f"validating on {len(splits.validation)}; pos_weight={pos_weight:.3f}"
    )

    for epoch in range(1, train_cfg.epochs + 1):
        order = shuffle_rng.permutation(n)
        epoch_loss = 0.0

        for batch_start in range(0, n, train_cfg.batch_size):
            batch = order[batch_start:batch_start + train_cfg.batch_size]
            summed = params.zeros_like()
            for idx in batch:
                window = splits.train[idx]
                probability, trace = forward(window.features, params, training=True, rng=dropout_rng)
                epoch_loss += bce_loss(probability, window.label, pos_weight)
                grads = backward(trace, params, window.label, pos_weight)
                for name, g in grads.items():
                    summed[name] += g
            mean_grads = {name: g / len(batch) for name, g in summed.items()}
            step += 1
            params, state = adam_step(params, mean_grads, state, train_cfg, step)

        val_pairs = score_windows(params, splits.validation)
        val_auc = auc(val_pairs)
        val_loss = float(np.mean([bce_loss(p, y, pos_weight) for p, y in val_pairs]))
        report.train_loss.append(epoch_loss / n)
        report.validation_loss.append(val_loss)
        report.validation_auc.append(val_auc)

        if val_auc > best_auc:
            best_auc = val_auc
            best_params = params.copy()
            report.best_epoch = epoch
            stale = 0
        else:
            stale += 1

        logger.info(
            f"epoch {epoch:3d} | train loss {report.train_loss[-1]:.5f} | "
            f"val loss {val_loss:.5f} | val AUC {val_auc:.4f}"
        )

        if stale >= train_cfg.patience:
            logger.info(f"Early stop after epoch {epoch}: no AUC gain for {stale} epochs")
            break

    report.best_validation_auc = best_auc
    report.threshold = best_f1_threshold(score_windows(best_params, splits.validation))
    report.wall_clock_seconds = time.perf_counter() - started
    logger.info(
        f"✓ Training done: best epoch {report.best_epoch}, val AUC {best_auc:.4f}, "
        f"threshold {report.threshold:.4f} ({report.wall_clock_seconds:.1f}s)"
    )
    return best_params, report
