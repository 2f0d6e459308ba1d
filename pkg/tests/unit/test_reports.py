"""
Tests for report types and report files.
"""
import pytest

from src.core.evaluation import ReportFormat, emit_report, load_report, render_csv
from src.models.reports import MetricsReport, SweepEntry, SweepResult


def metrics(model="Ours", auc=0.927, f1=0.864, precision=0.871, recall=0.857, threshold=0.5):
    return MetricsReport(
        model=model, auc=auc, f1=f1, precision=precision, recall=recall, threshold=threshold,
        tp=6, fp=1, tn=90, fn=1, n_pos=7, n_neg=91,
    )


class TestMetricsReport:
    def test_counts_must_agree(self):
        with pytest.raises(ValueError):
            MetricsReport(precision=0.5, recall=0.5, f1=0.5, threshold=0.5,
                          tp=1, fp=1, tn=1, fn=1, n_pos=3, n_neg=2)

    def test_rates_in_unit_interval(self):
        with pytest.raises(ValueError):
            metrics(auc=1.2)


class TestCsv:
    def test_row_layout(self):
        text = render_csv(metrics())
        assert text == (
            "model,auc,f1,precision,recall,threshold\n"
            "Ours,0.927000,0.864000,0.871000,0.857000,0.500000\n"
        )

    def test_empty_sweep_is_header_only(self):
        assert render_csv(SweepResult()) == "model,auc,f1,precision,recall,threshold\n"

    def test_sweep_rows_in_value_order(self):
        result = SweepResult(
            parameter="h",
            entries=[SweepEntry(value=1, report=metrics("h=1", auc=0.8)),
                     SweepEntry(value=4, report=metrics("h=4", auc=0.9))],
            best=4,
        )
        lines = render_csv(result).splitlines()
        assert [line.split(",")[0] for line in lines[1:]] == ["h=1", "h=4"]

    def test_write_csv(self, tmp_path):
        path = emit_report(metrics(), ReportFormat.CSV, tmp_path / "out" / "report.csv")
        assert path.read_text().startswith("model,auc,f1,precision,recall,threshold\n")


class TestJson:
    def test_metrics_round_trip(self, tmp_path):
        report = metrics(auc=0.1234567891234, threshold=0.3333333333333)
        path = emit_report(report, ReportFormat.JSON, tmp_path / "report.json")
        assert load_report(path) == report

    def test_sweep_round_trip(self, tmp_path):
        result = SweepResult(
            parameter="dropout_rate",
            entries=[SweepEntry(value=0.0, report=metrics("a")),
                     SweepEntry(value=0.2, report=metrics("b"))],
            best=0.0,
        )
        path = emit_report(result, ReportFormat.JSON, tmp_path / "sweep.json")
        assert load_report(path) == result

    def test_sweep_values_must_increase(self):
        with pytest.raises(ValueError):
            SweepResult(entries=[SweepEntry(value=4, report=metrics()),
                                 SweepEntry(value=2, report=metrics())])
