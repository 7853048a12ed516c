from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosketch.trend import (
    TrendLabel,
    TrendSegment,
    classify,
    ema,
    expand_segments,
    macd,
    phase_frequencies,
    run_lengths,
)
from oracles import ema_recurrence, macd_recurrence


class TestEma:
    def test_constant_is_fixed_point(self):
        assert ema([3.0] * 20, 7) == [3.0] * 20

    def test_two_sample_recurrence(self):
        assert ema([0.0, 1.0], 3) == [0.0, 0.5]

    def test_period_one_is_identity(self):
        series = [1.0, -2.0, 4.5, 0.0]
        assert ema(series, 1) == series

    def test_errors(self):
        with pytest.raises(ValueError):
            ema([], 3)
        with pytest.raises(ValueError):
            ema([1.0], 0)

    def test_matches_recurrence_oracle(self):
        rng = random.Random(99)
        series = [rng.uniform(-5, 5) for _ in range(200)]
        for period in (1, 2, 9, 12, 26):
            got = ema(series, period)
            want = ema_recurrence(series, period)
            assert got == pytest.approx(want, abs=1e-12)

    @given(
        st.lists(st.floats(-100, 100), min_size=1, max_size=100),
        st.integers(1, 30),
        st.floats(-50, 50),
    )
    @settings(max_examples=60, deadline=None)
    def test_shift_equivariance(self, series, period, c):
        shifted = ema([v + c for v in series], period)
        base = ema(series, period)
        for a, b in zip(shifted, base):
            assert a == pytest.approx(b + c, abs=1e-6)


class TestMacd:
    def test_constant_curve_all_zero(self):
        result = macd([5.0] * 50)
        assert all(v == 0.0 for v in result.macd_line)
        assert all(v == 0.0 for v in result.signal_line)
        assert all(v == 0.0 for v in result.histogram)

    def test_single_element(self):
        result = macd([5.0])
        assert list(result.macd_line) == [0.0]
        assert list(result.signal_line) == [0.0]

    def test_linear_ramp_matches_oracle(self):
        curve = [float(i) for i in range(100)]
        want_macd, want_signal, want_hist = macd_recurrence(curve, 12, 26, 9)
        got = macd(curve)
        assert got.macd_line == pytest.approx(want_macd, abs=1e-9)
        assert got.signal_line == pytest.approx(want_signal, abs=1e-9)
        assert got.histogram == pytest.approx(want_hist, abs=1e-9)

    def test_fast_must_be_below_slow(self):
        with pytest.raises(ValueError):
            macd([1.0, 2.0], fast=26, slow=12)

    def test_translation_invariance(self):
        rng = random.Random(4)
        curve = [rng.uniform(-10, 10) for _ in range(120)]
        base = macd(curve)
        shifted = macd([v + 42.0 for v in curve])
        assert shifted.macd_line == pytest.approx(base.macd_line, abs=1e-9)
        assert shifted.histogram == pytest.approx(base.histogram, abs=1e-9)


class TestClassify:
    def test_constant_curve_is_all_wait(self):
        labels = classify(macd([2.0] * 60), hold_epsilon=0.1)
        assert labels == [TrendLabel.WAIT] * 60

    def test_decreasing_curve_dominated_by_execute(self):
        curve = [-float(i) for i in range(100)]
        labels = classify(macd(curve), hold_epsilon=0.1)
        non_wait = [l for l in labels if l is not TrendLabel.WAIT]
        assert non_wait.count(TrendLabel.EXECUTE) == len(non_wait)
        assert labels.count(TrendLabel.EXECUTE) > 25

    def test_increasing_curve_dominated_by_regulate(self):
        curve = [float(i) for i in range(100)]
        labels = classify(macd(curve), hold_epsilon=0.1)
        non_wait = [l for l in labels if l is not TrendLabel.WAIT]
        assert non_wait.count(TrendLabel.REGULATE) == len(non_wait)

    def test_sign_antisymmetry(self):
        rng = random.Random(12)
        steps = [rng.choice([-1.0, 0.0, 0.5, 1.0]) for _ in range(300)]
        curve = []
        total = 0.0
        for s in steps:
            total += s
            curve.append(total)
        flipped = [-v for v in curve]
        swap = {
            TrendLabel.REGULATE: TrendLabel.EXECUTE,
            TrendLabel.EXECUTE: TrendLabel.REGULATE,
            TrendLabel.WAIT: TrendLabel.WAIT,
        }
        base = classify(macd(curve))
        mirrored = classify(macd(flipped))
        assert mirrored == [swap[l] for l in base]


class TestRunLengths:
    def test_basic_grouping(self):
        e, w, r = TrendLabel.EXECUTE, TrendLabel.WAIT, TrendLabel.REGULATE
        segments = run_lengths([e, e, w, w, w, r])
        assert segments == [
            TrendSegment(e, 0, 2),
            TrendSegment(w, 2, 3),
            TrendSegment(r, 5, 1),
        ]

    def test_uniform(self):
        segments = run_lengths([TrendLabel.WAIT] * 9)
        assert segments == [TrendSegment(TrendLabel.WAIT, 0, 9)]

    def test_alternating(self):
        labels = [TrendLabel.EXECUTE, TrendLabel.REGULATE] * 5
        assert len(run_lengths(labels)) == 10

    @given(st.lists(st.sampled_from(list(TrendLabel)), max_size=200))
    @settings(max_examples=80, deadline=None)
    def test_lossless_and_tiling(self, labels):
        segments = run_lengths(labels)
        assert expand_segments(segments) == labels
        assert sum(s.length_ticks for s in segments) == len(labels)
        for a, b in zip(segments, segments[1:]):
            assert a.label is not b.label
            assert b.start_tick == a.start_tick + a.length_ticks


class TestPhaseFrequencies:
    def test_uniform_split(self):
        segments = run_lengths([TrendLabel.EXECUTE] * 100)
        phases = phase_frequencies(segments, 4)
        assert len(phases) == 4
        assert all(p[TrendLabel.EXECUTE] == 25 for p in phases)

    def test_half_and_half(self):
        labels = [TrendLabel.EXECUTE] * 50 + [TrendLabel.REGULATE] * 50
        phases = phase_frequencies(run_lengths(labels), 2)
        assert phases[0] == {
            TrendLabel.REGULATE: 0,
            TrendLabel.EXECUTE: 50,
            TrendLabel.WAIT: 0,
        }
        assert phases[1][TrendLabel.REGULATE] == 50

    def test_straddling_segment_conserved(self):
        labels = [TrendLabel.WAIT] * 7 + [TrendLabel.EXECUTE] * 6
        phases = phase_frequencies(run_lengths(labels), 4)
        total = sum(sum(p.values()) for p in phases)
        assert total == 13
        spans = [sum(p.values()) for p in phases]
        assert spans == [3, 3, 3, 4]

    def test_requires_positive_phases(self):
        with pytest.raises(ValueError):
            phase_frequencies([], 0)
