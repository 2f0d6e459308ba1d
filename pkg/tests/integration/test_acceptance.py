"""
Full-size training run on the reference synthetic ledger.

Run with ``pytest -m slow``; takes minutes.
"""
import pytest

from src.core.data import AnomalyPattern, generate_synthetic, prepare_dataset
from src.core.evaluation import evaluate
from src.core.training import score_windows, train
from src.models.config import ExperimentConfig


@pytest.mark.slow
class TestReferenceLedger:
    def test_detects_spikes_and_bursts(self):
        records = generate_synthetic(
            n_accounts=20,
            records_per_account=500,
            anomaly_rate=0.05,
            seed=7,
            patterns=[AnomalyPattern.AMOUNT_SPIKE, AnomalyPattern.BURST],
        )
        experiment = ExperimentConfig()
        dataset = prepare_dataset(records, experiment.model, experiment.data)

        params, report = train(dataset.splits, dataset.model_config, experiment.train)
        metrics = evaluate(score_windows(params, dataset.splits.test), threshold=report.threshold)

        assert metrics.auc >= 0.95
        assert metrics.f1 >= 0.80
