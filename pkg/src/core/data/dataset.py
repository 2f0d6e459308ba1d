"""
Chronological dataset preparation: split, fit encoder, windowize.
"""
from dataclasses import dataclass, field
from itertools import groupby
from typing import Sequence

from src.core.data.encoder import FeatureEncoder, fit_encoder
from src.core.data.windows import SequenceWindow, encode_accounts, windowize
from src.core.exceptions import DataError
from src.models.config import DataConfig, ModelConfig, ModelHyperparams
from src.models.transaction import TransactionRecord
from src.utils.logger import logger


@dataclass
class WindowSplits:
    """Train / validation / test windows, each in account-then-time order."""

    train: list[SequenceWindow] = field(default_factory=list)
    validation: list[SequenceWindow] = field(default_factory=list)
    test: list[SequenceWindow] = field(default_factory=list)

    @staticmethod
    def positives(windows: Sequence[SequenceWindow]) -> int:
        return sum(w.label for w in windows)

    def summary(self) -> str:
        parts = []
        for name in ("train", "validation", "test"):
            windows = getattr(self, name)
            parts.append(f"{name}={len(windows)} ({self.positives(windows)} pos)")
        return ", ".join(parts)


@dataclass
class Dataset:
    """
    Everything training needs: the frozen encoder, model config and splits.

    ``records`` and ``data_config`` are kept so the splits can be rebuilt for
    another window length.
    """

    encoder: FeatureEncoder
    model_config: ModelConfig
    splits: WindowSplits
    records: list[TransactionRecord] = field(default_factory=list)
    data_config: DataConfig = field(default_factory=DataConfig)

    def rewindowed(self, T: int) -> WindowSplits:
        """Splits of the same records and encoder at window length ``T``."""
        if not self.records:
            raise DataError("dataset keeps no records to re-window")
        return split_windows(self.records, self.encoder, T, self.data_config)


def _cut_points(n: int, data_cfg: DataConfig) -> tuple[int, int]:
    train_end = int(n * data_cfg.train_fraction)
    validation_end = int(n * (data_cfg.train_fraction + data_cfg.validation_fraction))
    return train_end, validation_end


def _by_account(records: Sequence[TransactionRecord]) -> list[list[TransactionRecord]]:
    return [list(group) for _, group in groupby(records, key=lambda r: r.account_id)]


def split_windows(
    records: Sequence[TransactionRecord],
    encoder: FeatureEncoder,
    T: int,
    data_cfg: DataConfig = DataConfig(),
) -> WindowSplits:
    """Encode with a given encoder, windowize and assign windows by their final record."""
    cuts = {
        group[0].account_id: _cut_points(len(group), data_cfg)
        for group in _by_account(records)
    }
    windows = windowize(encode_accounts(records, encoder), T, data_cfg.stride, data_cfg.label_rule)

    splits = WindowSplits()
    for window in windows:
        train_end, validation_end = cuts[window.account_id]
        if window.end_index < train_end:
            splits.train.append(window)
        elif window.end_index < validation_end:
            splits.validation.append(window)
        else:
            splits.test.append(window)
    return splits


def prepare_dataset(
    records: Sequence[TransactionRecord],
    hyperparams: ModelHyperparams,
    data_cfg: DataConfig = DataConfig(),
) -> Dataset:
    """
    Build chronological splits without leaking future statistics.

    Per account, the first ``train_fraction`` of records (by position) are the
    training portion and the next ``validation_fraction`` the validation
    portion. The encoder is fitted on training-portion records only; every
    window goes to the split that holds its final record.

    Raises:
        DataError: If no account contributes training records
    """
    training_records = []
    for group in _by_account(records):
        train_end, _ = _cut_points(len(group), data_cfg)
        training_records.extend(group[:train_end])

    if not training_records:
        raise DataError("no training records: every account is too short to split")

    encoder = fit_encoder(training_records)
    model_config = ModelConfig.from_hyperparams(hyperparams, encoder.dimension)
    splits = split_windows(records, encoder, hyperparams.T, data_cfg)

    logger.info(f"✓ Prepared dataset: d={encoder.dimension}, {splits.summary()}")
    return Dataset(
        encoder=encoder,
        model_config=model_config,
        splits=splits,
        records=list(records),
        data_config=data_cfg,
    )
