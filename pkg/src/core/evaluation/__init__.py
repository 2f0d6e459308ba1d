from src.core.evaluation.metrics import auc, best_f1_threshold, evaluate, prf_at
from src.core.evaluation.reports import ReportFormat, emit_report, load_report, render_csv

# sweep.py is imported directly: it depends on training, which depends on these metrics

__all__ = [
    "ReportFormat",
    "auc",
    "best_f1_threshold",
    "emit_report",
    "evaluate",
    "load_report",
    "prf_at",
    "render_csv",
]
