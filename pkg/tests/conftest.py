"""
Shared fixtures: tiny configurations, synthetic ledgers and an untrained model bundle.
"""
import pytest

from src.config.settings import settings
from src.core.data import fit_encoder, generate_synthetic
from src.core.model import init_params
from src.core.numeric import SeededRng
from src.core.training.serialization import ModelBundle
from src.models.config import DataConfig, ModelConfig, ModelHyperparams, TrainConfig
from src.models.transaction import TransactionRecord


@pytest.fixture
def rng() -> SeededRng:
    return SeededRng(1234)


@pytest.fixture
def small_cfg() -> ModelConfig:
    return ModelConfig(d=5, d_h=8, h=2, T=4, n_blocks=1, dropout_rate=0.0, seed=3)


@pytest.fixture
def small_params(small_cfg):
    return init_params(small_cfg)


@pytest.fixture(scope="session")
def ledger() -> list[TransactionRecord]:
    """10 accounts x 80 records, 15% anomalous."""
    return generate_synthetic(n_accounts=10, records_per_account=80, anomaly_rate=0.15, seed=11)


@pytest.fixture(scope="session")
def tiny_hyperparams() -> ModelHyperparams:
    return ModelHyperparams(d_h=8, h=2, T=4, n_blocks=1, dropout_rate=0.1, seed=5)


@pytest.fixture(scope="session")
def tiny_train_cfg() -> TrainConfig:
    return TrainConfig(epochs=3, batch_size=16, patience=2, seed=5)


@pytest.fixture(scope="session")
def data_cfg() -> DataConfig:
    return DataConfig()


@pytest.fixture(scope="session")
def bundle(ledger) -> ModelBundle:
    """Untrained but fully consistent model: encoder fitted on the ledger, T=8."""
    encoder = fit_encoder(ledger)
    cfg = ModelConfig(d=encoder.dimension, d_h=8, h=2, T=8, n_blocks=2, dropout_rate=0.0, seed=9)
    return ModelBundle(params=init_params(cfg), config=cfg, encoder=encoder, threshold=0.5)


@pytest.fixture
def artifact_dirs(tmp_path, monkeypatch):
    """Point every settings directory into a temporary tree."""
    monkeypatch.setattr(settings, "data_dir", tmp_path / "ledgers")
    monkeypatch.setattr(settings, "model_dir", tmp_path / "models")
    monkeypatch.setattr(settings, "report_dir", tmp_path / "reports")
    return tmp_path
