"""
Model, training and experiment configuration.

Invariant violations raise ``ConfigError`` straight out of validation so callers
see a configuration fault rather than a generic validation error.
"""
import enum
import json
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from src.core.exceptions import ConfigError


class Pooling(str, enum.Enum):
    """How the T rows of the final hidden state become one prediction."""

    MEAN = "mean"
    LAST = "last"


class LabelRule(str, enum.Enum):
    """How member record labels become a window label."""

    ANY = "any"
    LAST = "last"


class ModelHyperparams(BaseModel):
    """Architecture hyperparameters that do not depend on the fitted encoder."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    d_h: int = 32
    h: int = 4
    T: int = 16
    n_blocks: int = 2
    dropout_rate: float = 0.1
    pooling: Pooling = Pooling.MEAN
    d_f: Optional[int] = None
    seed: int = 7

    @model_validator(mode="after")
    def _check_invariants(self):
        if self.d_h < 1 or self.h < 1:
            raise ConfigError(f"d_h and h must be positive (d_h={self.d_h}, h={self.h})")
        if self.d_h % self.h != 0:
            raise ConfigError(f"head count h={self.h} must divide d_h={self.d_h}")
        if self.T < 1:
            raise ConfigError(f"window length T must be >= 1, got {self.T}")
        if self.n_blocks < 1:
            raise ConfigError(f"n_blocks must be >= 1, got {self.n_blocks}")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ConfigError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        if self.d_f is not None and self.d_f < 1:
            raise ConfigError(f"d_f must be >= 1, got {self.d_f}")
        return self

    @property
    def d_k(self) -> int:
        """Per-head subspace width."""
        return self.d_h // self.h

    @property
    def hidden_width(self) -> int:
        """Width of the classification head's hidden layer (4*d_h unless set)."""
        return self.d_f if self.d_f is not None else 4 * self.d_h


class ModelConfig(ModelHyperparams):
    """Full model configuration: hyperparameters plus the input feature dimension."""

    d: int

    @model_validator(mode="after")
    def _check_input_dim(self):
        if self.d < 1:
            raise ConfigError(f"input dimension d must be >= 1, got {self.d}")
        return self

    @classmethod
    def from_hyperparams(cls, hp: ModelHyperparams, d: int) -> "ModelConfig":
        return cls(d=d, **hp.model_dump())


class TrainConfig(BaseModel):
    """Optimizer and loop settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    epochs: int = 50
    batch_size: int = 32
    patience: int = 5
    pos_weight: Optional[float] = None  # None: N_neg/N_pos of the training split
    seed: int = 7

    @model_validator(mode="after")
    def _check_invariants(self):
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ConfigError(f"betas must be in [0, 1), got {self.beta1}, {self.beta2}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.epochs < 0 or self.patience < 1:
            raise ConfigError("epochs must be >= 0 and patience >= 1")
        if self.pos_weight is not None and self.pos_weight <= 0:
            raise ConfigError(f"pos_weight must be > 0, got {self.pos_weight}")
        return self


class DataConfig(BaseModel):
    """Windowing and split settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    stride: int = 1
    label_rule: LabelRule = LabelRule.ANY
    train_fraction: float = 0.70
    validation_fraction: float = 0.15

    @model_validator(mode="after")
    def _check_invariants(self):
        if self.stride < 1:
            raise ConfigError(f"stride must be >= 1, got {self.stride}")
        if not (0 < self.train_fraction and 0 < self.validation_fraction
                and self.train_fraction + self.validation_fraction < 1):
            raise ConfigError("split fractions must be positive and leave room for a test split")
        return self


class ExperimentConfig(BaseModel):
    """Everything ``train`` and ``sweep`` read from a config file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelHyperparams = ModelHyperparams()
    train: TrainConfig = TrainConfig()
    data: DataConfig = DataConfig()

    @classmethod
    def from_file(cls, path: Optional[Path]) -> "ExperimentConfig":
        """
        Load an experiment config from JSON; ``None`` gives the defaults.

        Raises:
            ConfigError: If the file is not valid JSON or breaks an invariant
        """
        if path is None:
            return cls()
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
        try:
            return cls.model_validate(raw)
        except ValueError as e:
            raise ConfigError(f"invalid config file {path}: {e}") from e
