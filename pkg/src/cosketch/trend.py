"""Trend classification of the cumulative interaction curve.

Stock-market style indicators over the coded curve: fast/slow EMA
difference, its own EMA as a signal line, and a per-tick buy/sell/hold
reading mapped to regulate/execute/wait.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class TrendLabel(str, Enum):
    REGULATE = "regulate"  # buy
    EXECUTE = "execute"  # sell
    WAIT = "wait"  # hold


@dataclass(frozen=True, slots=True)
class MacdResult:
    macd_line: tuple[float, ...]
    signal_line: tuple[float, ...]
    histogram: tuple[float, ...]


@dataclass(frozen=True, slots=True)
class TrendSegment:
    label: TrendLabel
    start_tick: int
    length_ticks: int


def ema(series: Sequence[float], period: int) -> list[float]:
    """Exponential moving average seeded on the first sample.

    alpha = 2 / (period + 1); no warm-up window is discarded because
    sessions are short and every tick carries signal.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    if not series:
        raise ValueError("empty series")
    alpha = 2.0 / (period + 1)
    out = [float(series[0])]
    for value in series[1:]:
        out.append(alpha * value + (1 - alpha) * out[-1])
    return out


def macd(curve: Sequence[float], fast: int = 12, slow: int = 26, signal: int = 9) -> MacdResult:
    """MACD line, signal line, and their difference, all curve-length."""
    if fast >= slow:
        raise ValueError("fast period must be smaller than slow period")
    fast_ema = ema(curve, fast)
    slow_ema = ema(curve, slow)
    macd_line = [f - s for f, s in zip(fast_ema, slow_ema)]
    signal_line = ema(macd_line, signal)
    histogram = [m - s for m, s in zip(macd_line, signal_line)]
    return MacdResult(
        macd_line=tuple(macd_line), signal_line=tuple(signal_line), histogram=tuple(histogram)
    )


def classify(m: MacdResult, hold_epsilon: float = 0.1) -> list[TrendLabel]:
    """Per-tick label from the histogram sign, with an epsilon hold band.

    A flat curve drives the histogram to zero, so |histogram| <= epsilon
    recovers the hold/wait reading deterministically.
    """
    labels = []
    for h in m.histogram:
        if abs(h) <= hold_epsilon:
            labels.append(TrendLabel.WAIT)
        elif h > 0:
            labels.append(TrendLabel.REGULATE)
        else:
            labels.append(TrendLabel.EXECUTE)
    return labels


def run_lengths(labels: Sequence[TrendLabel]) -> list[TrendSegment]:
    """Maximal same-label runs; lossless."""
    segments: list[TrendSegment] = []
    for i, label in enumerate(labels):
        if segments and segments[-1].label is label:
            last = segments[-1]
            segments[-1] = TrendSegment(last.label, last.start_tick, last.length_ticks + 1)
        else:
            segments.append(TrendSegment(label, i, 1))
    return segments


def expand_segments(segments: Sequence[TrendSegment]) -> list[TrendLabel]:
    labels: list[TrendLabel] = []
    for seg in segments:
        labels.extend([seg.label] * seg.length_ticks)
    return labels


def phase_frequencies(
    segments: Sequence[TrendSegment], n_phases: int = 4
) -> list[dict[TrendLabel, int]]:
    """Tick counts per label over n equal spans of the timeline.

    Segments straddling a phase boundary contribute their ticks to each
    side, so per-phase counts always sum to the span length.
    """
    if n_phases < 1:
        raise ValueError("need at least one phase")
    labels = expand_segments(segments)
    n = len(labels)
    phases: list[dict[TrendLabel, int]] = []
    for p in range(n_phases):
        lo = (p * n) // n_phases
        hi = ((p + 1) * n) // n_phases
        counts = {label: 0 for label in TrendLabel}
        for i in range(lo, hi):
            counts[labels[i]] += 1
        phases.append(counts)
    return phases


__all__ = [
    "MacdResult",
    "TrendLabel",
    "TrendSegment",
    "classify",
    "ema",
    "expand_segments",
    "macd",
    "phase_frequencies",
    "run_lengths",
]
