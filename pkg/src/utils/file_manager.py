"""
Artifact path management: generated ledgers, trained models and reports.
"""
from datetime import datetime
from pathlib import Path
from typing import Optional

from src.config.settings import settings
from src.utils.logger import logger


def _stamp() -> str:
    return datetime.now().strftime("%Y%m%d_%H%M%S")


class FileManager:
    """Default locations for everything the CLI writes."""

    @staticmethod
    def get_ledger_path(seed: int, suffix: str = ".csv") -> Path:
        """Path for a generated synthetic ledger."""
        path = settings.data_dir / f"synthetic_seed{seed}_{_stamp()}{suffix}"
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def get_model_path(name: str = "model") -> Path:
        """Path for a trained model file."""
        path = settings.model_dir / f"{name}_{_stamp()}.lsnt"
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def get_report_path(kind: str, suffix: str = ".json") -> Path:
        """Path for a metrics, sweep or training report."""
        path = settings.report_dir / f"{kind}_{_stamp()}{suffix}"
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def latest_model() -> Optional[Path]:
        """
        Most recently written model in the model directory.

        Returns:
            Path to the newest ``.lsnt`` file, or None if there is none
        """
        if not settings.model_dir.exists():
            logger.warning(f"Model directory not found: {settings.model_dir}")
            return None

        models = sorted(settings.model_dir.glob("*.lsnt"), key=lambda p: p.stat().st_mtime)
        if not models:
            return None
        logger.debug(f"Found {len(models)} model(s) in {settings.model_dir}")
        return models[-1]


# Convenience instance
file_manager = FileManager()
