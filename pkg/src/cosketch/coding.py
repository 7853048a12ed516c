"""Interaction-mode coding: per-tick codes, cumulative curve, regression.

Each 500 ms tick gets exactly one mode per actor, with priority
communicate > manipulate > execute > wait, so that near-instant
communication clicks are not swallowed by long pen strokes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    COMMUNICATE_KINDS,
    EXECUTE_KINDS,
    MANIPULATE_KINDS,
    ActionEvent,
    Actor,
    EngineConfig,
    InteractionMode,
    Turn,
    tick_count,
)


@dataclass(frozen=True, slots=True)
class CodeSeries:
    actor: Actor
    tick_ms: int
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, slots=True)
class CsmCurve:
    actor: Actor
    values: tuple[float, ...]


@dataclass(frozen=True, slots=True)
class CurveStats:
    slope: float
    intercept: float
    r_squared: Optional[float]  # None when the curve has zero variance
    mean_code: float


def code_timeline(
    events: Sequence[ActionEvent],
    turns: Sequence[Turn],
    config: EngineConfig,
    actor: Actor,
) -> CodeSeries:
    """Assign one interaction mode to every tick of the session for an actor.

    Communicate and manipulate come from instantaneous events landing in the
    tick; execute from the actor's pen being down (stroke span overlapping
    the tick) or an instantaneous artistic action; wait otherwise. Events at
    exactly the session end clamp into the final tick.
    """
    if not events:
        return CodeSeries(actor=actor, tick_ms=config.tick_ms, values=())
    duration = max(ev.t for ev in events)
    n = tick_count(duration, config.tick_ms)
    tick = config.tick_ms

    communicate = bytearray(n)
    manipulate = bytearray(n)
    execute = bytearray(n)

    def tick_of(t: int) -> int:
        return min(t // tick, n - 1)

    for ev in events:
        if ev.actor is not actor:
            continue
        idx = tick_of(ev.t)
        if ev.kind in COMMUNICATE_KINDS:
            communicate[idx] = 1
        elif ev.kind in MANIPULATE_KINDS:
            manipulate[idx] = 1
        elif ev.kind in EXECUTE_KINDS:
            execute[idx] = 1

    for turn in turns:
        if turn.actor is not actor:
            continue
        for stroke in turn.strokes:
            first = tick_of(stroke.t_start)
            last = tick_of(stroke.t_end)
            for idx in range(first, last + 1):
                execute[idx] = 1

    values = []
    for i in range(n):
        if communicate[i]:
            values.append(InteractionMode.COMMUNICATE.value)
        elif manipulate[i]:
            values.append(InteractionMode.MANIPULATE_INTERFACE.value)
        elif execute[i]:
            values.append(InteractionMode.EXECUTE.value)
        else:
            values.append(InteractionMode.WAIT.value)
    return CodeSeries(actor=actor, tick_ms=tick, values=tuple(values))


def csm_curve(series: CodeSeries) -> CsmCurve:
    """Cumulative sum of the coded values."""
    if not series.values:
        raise ValueError("empty series")
    total = 0.0
    values = []
    for v in series.values:
        total += v
        values.append(total)
    return CsmCurve(actor=series.actor, values=tuple(values))


def curve_stats(curve: CsmCurve, series: CodeSeries) -> CurveStats:
    """Ordinary least squares of curve value against tick index.

    A zero-variance curve gets slope 0 and an undefined r-squared rather
    than a fabricated 0 or 1.
    """
    y = curve.values
    n = len(y)
    if n < 2:
        raise ValueError("need at least 2 curve samples for a regression")
    mean_x = (n - 1) / 2.0
    mean_y = sum(y) / n
    sxx = sum((i - mean_x) ** 2 for i in range(n))
    sxy = sum((i - mean_x) * (v - mean_y) for i, v in enumerate(y))
    syy = sum((v - mean_y) ** 2 for v in y)
    mean_code = sum(series.values) / len(series.values) if series.values else 0.0
    if syy == 0.0:
        return CurveStats(slope=0.0, intercept=mean_y, r_squared=None, mean_code=mean_code)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    r_squared = (sxy * sxy) / (sxx * syy)
    return CurveStats(slope=slope, intercept=intercept, r_squared=r_squared, mean_code=mean_code)


def mode_counts(series: CodeSeries) -> dict[InteractionMode, int]:
    """Exact tick counts per mode; they partition the timeline."""
    counts = {mode: 0 for mode in InteractionMode}
    by_value = {mode.value: mode for mode in InteractionMode}
    for v in series.values:
        counts[by_value[v]] += 1
    return counts


def code_both_actors(
    events: Sequence[ActionEvent], turns: Sequence[Turn], config: EngineConfig
) -> dict[Actor, CodeSeries]:
    return {actor: code_timeline(events, turns, config, actor) for actor in Actor}


__all__ = [
    "CodeSeries",
    "CsmCurve",
    "CurveStats",
    "code_both_actors",
    "code_timeline",
    "csm_curve",
    "curve_stats",
    "mode_counts",
]
