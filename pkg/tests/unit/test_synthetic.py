"""
Tests for the synthetic ledger generator.
"""
from itertools import groupby

import pytest

from src.core.data import AnomalyPattern, generate_synthetic
from src.core.data.synthetic import STRUCTURING_THRESHOLD
from src.core.exceptions import ParameterError
from src.models.transaction import Direction


def by_account(records):
    return {k: list(g) for k, g in groupby(records, key=lambda r: r.account_id)}


class TestGenerator:
    def test_deterministic(self):
        a = generate_synthetic(3, 50, 0.1, seed=7)
        b = generate_synthetic(3, 50, 0.1, seed=7)
        assert a == b

    def test_seed_changes_output(self):
        assert generate_synthetic(2, 30, 0.1, seed=1) != generate_synthetic(2, 30, 0.1, seed=2)

    def test_sizes_and_ids(self):
        records = generate_synthetic(4, 25, 0.0, seed=3)
        accounts = by_account(records)
        assert sorted(accounts) == ["acct-0000", "acct-0001", "acct-0002", "acct-0003"]
        assert all(len(group) == 25 for group in accounts.values())

    @pytest.mark.parametrize("rate", [0.0, 0.05, 0.2, 0.5])
    def test_anomaly_count_matches_rate(self, rate):
        records = generate_synthetic(5, 60, rate, seed=13)
        assert sum(r.label for r in records) == round(rate * 300)

    def test_rate_holds_for_short_accounts(self):
        # 25 records at 2% is half a record per account
        records = generate_synthetic(4000, 25, 0.02, seed=3)
        assert len(records) == 100_000
        assert 0.015 <= sum(r.label for r in records) / len(records) <= 0.025

    def test_timestamps_strictly_increase(self):
        records = generate_synthetic(5, 200, 0.2, seed=21)
        for group in by_account(records).values():
            times = [r.timestamp for r in group]
            assert all(b > a for a, b in zip(times, times[1:]))

    def test_amounts_positive(self):
        assert all(r.amount > 0 for r in generate_synthetic(3, 100, 0.2, seed=5))

    @pytest.mark.parametrize("rate", [-0.1, 0.6])
    def test_invalid_rate(self, rate):
        with pytest.raises(ParameterError):
            generate_synthetic(1, 10, rate, seed=0)

    def test_empty_patterns(self):
        with pytest.raises(ParameterError):
            generate_synthetic(1, 10, 0.1, seed=0, patterns=[])


class TestPatterns:
    def test_structuring_sits_just_under_threshold(self):
        records = generate_synthetic(3, 100, 0.1, seed=9, patterns=[AnomalyPattern.STRUCTURING])
        flagged = [r for r in records if r.label == 1]
        assert flagged
        for r in flagged:
            assert STRUCTURING_THRESHOLD - 250 <= r.amount < STRUCTURING_THRESHOLD
            assert r.direction == Direction.CREDIT

    def test_off_hours_land_between_three_and_five(self):
        records = generate_synthetic(3, 100, 0.1, seed=9, patterns=[AnomalyPattern.OFF_HOURS])
        for r in records:
            if r.label == 1:
                hour = int((r.timestamp % 86400) // 3600)
                assert 3 <= hour < 5

    def test_spikes_are_large(self):
        records = generate_synthetic(3, 200, 0.05, seed=9, patterns=[AnomalyPattern.AMOUNT_SPIKE])
        for group in by_account(records).values():
            normal = sorted(r.amount for r in group if r.label == 0)
            median = normal[len(normal) // 2]
            spikes = [r.amount for r in group if r.label == 1]
            assert sum(a > 3 * median for a in spikes) >= len(spikes) // 2

    def test_bursts_are_dense(self):
        records = generate_synthetic(2, 300, 0.1, seed=9, patterns=[AnomalyPattern.BURST])
        burst_gaps, normal_gaps = [], []
        for group in by_account(records).values():
            for prev, cur in zip(group, group[1:]):
                (burst_gaps if cur.label == 1 and prev.label == 1 else normal_gaps).append(
                    cur.timestamp - prev.timestamp
                )
        assert sum(burst_gaps) / len(burst_gaps) < sum(normal_gaps) / len(normal_gaps) / 4

    @pytest.mark.parametrize("rate", [0.03, 0.07, 0.12])
    def test_bursts_keep_their_minimum_length(self, rate):
        records = generate_synthetic(10, 100, rate, seed=17, patterns=[AnomalyPattern.BURST])
        for group in by_account(records).values():
            runs = [len(list(g)) for label, g in groupby(group, key=lambda r: r.label) if label == 1]
            assert all(run >= 5 for run in runs)
