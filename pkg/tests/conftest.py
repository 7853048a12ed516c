from __future__ import annotations

import random

import pytest

from cosketch.model import ActionEvent, Actor, EngineConfig, EventKind, Point, Stroke


@pytest.fixture
def config() -> EngineConfig:
    return EngineConfig()


def make_stroke(
    coords,
    actor: Actor = Actor.USER,
    t_start: int = 0,
    t_end: int = 0,
) -> Stroke:
    return Stroke(
        points=tuple(Point(float(x), float(y)) for x, y in coords),
        actor=actor,
        t_start=t_start,
        t_end=t_end if t_end >= t_start else t_start,
    )


def pen_events(coords, t0: int, span_ms: int, actor: Actor = Actor.USER) -> list[ActionEvent]:
    """pen_down / pen_move... / pen_up over [t0, t0+span] for the coordinates."""
    coords = list(coords)
    n = len(coords)
    events = [
        ActionEvent(t0, actor, EventKind.PEN_DOWN, {"x": coords[0][0], "y": coords[0][1]})
    ]
    for k, (x, y) in enumerate(coords[1:-1], start=1):
        t = t0 + round(span_ms * k / max(n - 1, 1))
        events.append(ActionEvent(t, actor, EventKind.PEN_MOVE, {"x": x, "y": y}))
    events.append(
        ActionEvent(
            t0 + span_ms, actor, EventKind.PEN_UP, {"x": coords[-1][0], "y": coords[-1][1]}
        )
    )
    return events


def random_polyline(rng: random.Random, n_points: int, scale: float = 100.0):
    x, y = rng.uniform(0, scale), rng.uniform(0, scale)
    coords = [(x, y)]
    for _ in range(n_points - 1):
        x += rng.uniform(-scale / 4, scale / 4)
        y += rng.uniform(-scale / 4, scale / 4)
        coords.append((x, y))
    return coords
