"""
Tests for ledger ingest and export.
"""
import json

import pytest

from src.core.data import RecordFormat, generate_synthetic, ingest, parse_record, write_records
from src.core.exceptions import RowError, SchemaError
from src.models.transaction import Direction

HEADER = "timestamp,account_id,amount,direction,channel,counterparty,label\n"


def write_csv(path, rows):
    path.write_text(HEADER + "".join(row + "\n" for row in rows), encoding="utf-8")
    return path


class TestFormat:
    @pytest.mark.parametrize(
        "name,expected",
        [("a.csv", RecordFormat.CSV), ("a.jsonl", RecordFormat.JSONL), ("a.ndjson", RecordFormat.JSONL)],
    )
    def test_from_path(self, tmp_path, name, expected):
        assert RecordFormat.from_path(tmp_path / name) == expected

    def test_parse_record_empty_label(self):
        record = parse_record({
            "timestamp": "10", "account_id": "a", "amount": "5.5",
            "direction": "credit", "channel": "wire", "counterparty": "x", "label": "",
        })
        assert record.label is None
        assert record.direction == Direction.CREDIT
        assert record.amount == 5.5


class TestIngestCsv:
    def test_sorted_by_account_then_time(self, tmp_path):
        path = write_csv(tmp_path / "l.csv", [
            "30,b,10,debit,card,x,0",
            "20,a,10,debit,card,x,1",
            "10,b,10,credit,ach,y,",
            "5,a,12.5,debit,card,x,0",
        ])
        records = ingest(path)
        assert [(r.account_id, r.timestamp) for r in records] == [
            ("a", 5.0), ("a", 20.0), ("b", 10.0), ("b", 30.0)
        ]
        assert records[2].label is None
        assert records[1].is_anomalous

    def test_missing_column(self, tmp_path):
        path = tmp_path / "l.csv"
        path.write_text("timestamp,account_id,amount\n1,a,2\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            ingest(path)

    def test_label_column_is_optional(self, tmp_path):
        path = tmp_path / "l.csv"
        path.write_text(
            "timestamp,account_id,amount,direction,channel,counterparty\n1,a,2,debit,card,x\n",
            encoding="utf-8",
        )
        assert ingest(path)[0].label is None

    def test_bad_rows_are_collected_with_line_numbers(self, tmp_path):
        path = write_csv(tmp_path / "l.csv", [
            "1,a,10,debit,card,x,0",
            "2,a,-5,debit,card,x,0",
            "3,a,10,sideways,card,x,0",
            "4,a,10,debit,card,x,7",
        ])
        with pytest.raises(RowError) as info:
            ingest(path)
        assert [line for line, _ in info.value.errors] == [3, 4, 5]

    def test_skip_bad_keeps_good_rows(self, tmp_path):
        path = write_csv(tmp_path / "l.csv", [
            "1,a,10,debit,card,x,0",
            "2,a,-5,debit,card,x,0",
            "3,a,11,debit,card,x,0",
        ])
        records = ingest(path, skip_bad=True)
        assert [r.timestamp for r in records] == [1.0, 3.0]

    def test_wrong_field_count_is_a_row_error(self, tmp_path):
        path = write_csv(tmp_path / "l.csv", [
            "1,a,10,debit,card,x,0",
            "2,a,10,debit,card,x,0,surplus",
            "3,a,11,debit,card,x,0",
        ])
        with pytest.raises(RowError) as info:
            ingest(path)
        assert info.value.errors == [(3, "expected 7 fields, saw 8")]
        assert [r.timestamp for r in ingest(path, skip_bad=True)] == [1.0, 3.0]

    def test_invalid_utf8_row_is_skippable(self, tmp_path):
        path = tmp_path / "l.csv"
        path.write_bytes(
            HEADER.encode()
            + b"1,a,10,debit,card,x,0\n"
            + b"2,a\xff\xfe,10,debit,card,x,0\n"
            + b"3,a,11,debit,card,x,0\n"
        )
        with pytest.raises(RowError) as info:
            ingest(path)
        assert [line for line, _ in info.value.errors] == [3]
        assert [r.timestamp for r in ingest(path, skip_bad=True)] == [1.0, 3.0]

    def test_duplicate_timestamp_in_account(self, tmp_path):
        path = write_csv(tmp_path / "l.csv", [
            "1,a,10,debit,card,x,0",
            "1,a,11,debit,card,x,0",
            "1,b,11,debit,card,x,0",
        ])
        with pytest.raises(RowError) as info:
            ingest(path)
        assert len(info.value.errors) == 1
        assert len(ingest(path, skip_bad=True)) == 2

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        assert ingest(path) == []

    def test_header_only(self, tmp_path):
        assert ingest(write_csv(tmp_path / "l.csv", [])) == []


class TestIngestJsonl:
    def test_reads_objects(self, tmp_path):
        path = tmp_path / "l.jsonl"
        rows = [
            {"timestamp": 2, "account_id": "a", "amount": 3, "direction": "debit",
             "channel": "card", "counterparty": "x", "label": 1},
            {"timestamp": 1, "account_id": "a", "amount": 4, "direction": "credit",
             "channel": "card", "counterparty": "x"},
        ]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n\n", encoding="utf-8")
        records = ingest(path)
        assert [r.timestamp for r in records] == [1.0, 2.0]
        assert records[0].label is None

    def test_invalid_json_and_missing_keys(self, tmp_path):
        path = tmp_path / "l.jsonl"
        path.write_text(
            '{"timestamp": 1, "account_id": "a", "amount": 3, "direction": "debit", '
            '"channel": "card", "counterparty": "x"}\n'
            "{oops\n"
            '{"timestamp": 2, "account_id": "a"}\n'
            "[1, 2]\n",
            encoding="utf-8",
        )
        with pytest.raises(RowError) as info:
            ingest(path)
        assert [line for line, _ in info.value.errors] == [2, 3, 4]

    def test_invalid_utf8_line(self, tmp_path):
        good = ('{"timestamp": 1, "account_id": "a", "amount": 3, "direction": "debit", '
                '"channel": "card", "counterparty": "x"}\n').encode()
        path = tmp_path / "l.jsonl"
        path.write_bytes(good + b'{"account_id": "\xff"}\n' + good.replace(b'"timestamp": 1', b'"timestamp": 2'))
        with pytest.raises(RowError) as info:
            ingest(path)
        assert info.value.errors == [(2, "invalid UTF-8")]
        assert [r.timestamp for r in ingest(path, skip_bad=True)] == [1.0, 2.0]


class TestRoundTrip:
    @pytest.mark.parametrize("suffix", [".csv", ".jsonl"])
    def test_write_then_ingest(self, tmp_path, suffix):
        records = generate_synthetic(n_accounts=3, records_per_account=40, anomaly_rate=0.1, seed=4)
        path = tmp_path / f"ledger{suffix}"
        assert write_records(records, path) == len(records)
        assert ingest(path) == records

    def test_unlabeled_records_survive_csv(self, tmp_path):
        record = parse_record({
            "timestamp": 1.5, "account_id": "a", "amount": 0.1, "direction": "debit",
            "channel": "card", "counterparty": "x",
        })
        path = tmp_path / "l.csv"
        write_records([record], path)
        assert ingest(path) == [record]
