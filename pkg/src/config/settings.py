"""
Configuration settings for the ledger anomaly-detection engine.
Uses Pydantic Settings for environment variable management.
"""
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging
    log_level: str = "INFO"
    log_to_file: bool = False
    log_json: bool = False
    log_dir: Path = Path("logs")

    # Artifact paths
    data_dir: Path = Path("data/ledgers")
    model_dir: Path = Path("data/models")
    report_dir: Path = Path("data/reports")

    # Serving
    serve_host: str = "127.0.0.1"
    serve_port: int = 7878
    http_port: int = 8000

    # Reproducibility
    default_seed: int = 7

    def ensure_directories(self) -> None:
        """Ensure all artifact directories exist."""
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.model_dir.mkdir(parents=True, exist_ok=True)
        self.report_dir.mkdir(parents=True, exist_ok=True)


# Global settings instance
settings = Settings()
