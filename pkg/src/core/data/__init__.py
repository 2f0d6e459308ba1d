from src.core.data.dataset import Dataset, WindowSplits, prepare_dataset, split_windows
from src.core.data.encoder import FeatureEncoder, fit_encoder
from src.core.data.records_io import RecordFormat, ingest, parse_record, write_records
from src.core.data.synthetic import AnomalyPattern, generate_synthetic
from src.core.data.windows import (
    AccountSequence,
    SequenceWindow,
    encode_accounts,
    window_count,
    windowize,
)

__all__ = [
    "AccountSequence",
    "AnomalyPattern",
    "Dataset",
    "FeatureEncoder",
    "RecordFormat",
    "SequenceWindow",
    "WindowSplits",
    "encode_accounts",
    "fit_encoder",
    "generate_synthetic",
    "ingest",
    "parse_record",
    "prepare_dataset",
    "split_windows",
    "window_count",
    "windowize",
    "write_records",
]
