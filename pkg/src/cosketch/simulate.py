"""Synthetic two-group sessions: scripted personas drive the real engine.

The abstract persona mostly draws with long pen-down spans, sparse votes,
and occasional brush tweaks; the representational persona mostly requests
sketches and images, teaches, and rarely draws. Every session is fully
deterministic for a given seed, which makes the generated corpora usable
as fixtures for the statistical pipeline.
"""

from __future__ import annotations

import random

from .engine import Engine
from .model import ActionEvent, Actor, EventKind, Session

PROFILES = ("abstract", "representational")

_IMAGE_PROMPTS = (
    "a river at dusk",
    "clouds over rolling hills",
    "a lighthouse in fog",
    "wildflowers in a vase",
    "a city skyline at night",
)

_SKETCH_LABELS = ("house", "tree", "sun", "star", "fish", "bird", "cat", "dog")


class _Driver:
    """Feeds user events into an engine along an injected, clamped clock."""

    def __init__(self, engine: Engine, rng: random.Random, duration_ms: int):
        self.engine = engine
        self.rng = rng
        self.duration = duration_ms
        self.t = 0

    def advance(self, ms: int) -> None:
        target = min(self.t + ms, self.duration)
        while self.t < target:
            self.t = min(self.t + 100, target)
            self.engine.tick(self.t)

    def emit(self, kind: EventKind, payload: dict | None = None) -> None:
        self.engine.submit(
            ActionEvent(t=self.t, actor=Actor.USER, kind=kind, payload=payload or {})
        )

    def wait_for_agent(self, max_ms: int = 14_000) -> None:
        waited = 0
        while self.engine.busy() and waited < max_ms and self.t < self.duration:
            self.advance(200)
            waited += 200

    def draw_stroke(self, n_points: int, span_ms: int) -> None:
        rng = self.rng
        cfg = self.engine.config
        x = rng.uniform(40.0, cfg.canvas_w - 40.0)
        y = rng.uniform(40.0, cfg.canvas_h - 40.0)
        self.emit(EventKind.PEN_DOWN, {"x": round(x, 1), "y": round(y, 1)})
        step = max(span_ms // max(n_points - 1, 1), 1)
        for _ in range(max(n_points - 2, 0)):
            x = min(max(x + rng.uniform(-30.0, 30.0), 2.0), cfg.canvas_w - 2.0)
            y = min(max(y + rng.uniform(-30.0, 30.0), 2.0), cfg.canvas_h - 2.0)
            self.advance(step)
            self.emit(EventKind.PEN_MOVE, {"x": round(x, 1), "y": round(y, 1)})
        self.advance(step)
        self.emit(
            EventKind.PEN_UP,
            {"x": round(min(max(x + 5.0, 2.0), cfg.canvas_w - 2.0), 1), "y": round(y, 1)},
        )


def _finish(driver: _Driver) -> None:
    """Flush the agent, then land the final event exactly on the session end."""
    driver.wait_for_agent()
    if driver.t < driver.duration:
        driver.advance(driver.duration - driver.t)
    if driver.engine.emitting():
        driver.emit(EventKind.VOTE_DOWN)  # stop an emission caught by the clock
    else:
        driver.emit(EventKind.PANEL_TOGGLE)


def _run_abstract(driver: _Driver) -> None:
    rng = driver.rng
    margin = 16_000
    gap = driver.engine.config.turn_gap_ms
    while driver.t < driver.duration - margin:
        for _ in range(rng.randint(1, 3)):
            driver.draw_stroke(rng.randint(10, 18), rng.randint(1200, 3200))
            if driver.t >= driver.duration - margin:
                break
            driver.advance(rng.randint(400, 1600))
        if rng.random() < 0.4:
            kind = rng.choice(
                [EventKind.BRUSH_CHANGE, EventKind.CHOOSE_COLOR, EventKind.CHOOSE_LINE_WIDTH]
            )
            driver.emit(kind, {})
        driver.advance(gap + 200)
        # loosely turn based: often keep drawing while the agent draws
        if rng.random() < 0.45:
            while driver.engine.busy() and driver.t < driver.duration - margin:
                driver.draw_stroke(rng.randint(8, 14), rng.randint(1000, 2200))
                driver.advance(rng.randint(200, 700))
        else:
            driver.wait_for_agent()
        if rng.random() < 0.5:
            driver.emit(EventKind.VOTE_UP if rng.random() < 0.85 else EventKind.VOTE_DOWN)
        driver.advance(rng.randint(300, 1200))
    _finish(driver)


def _run_representational(driver: _Driver) -> None:
    rng = driver.rng
    cfg = driver.engine.config
    margin = 16_000
    taught = 0
    while driver.t < driver.duration - margin:
        roll = rng.random()
        if roll < 0.40:
            driver.emit(EventKind.REQUEST_SKETCH, {"label": rng.choice(_SKETCH_LABELS)})
            driver.advance(rng.randint(1200, 2400))
            driver.emit(
                EventKind.PLACE_ARTIFACT,
                {
                    "x": round(rng.uniform(20.0, cfg.canvas_w - 200.0), 1),
                    "y": round(rng.uniform(20.0, cfg.canvas_h - 200.0), 1),
                    "scale": round(rng.uniform(0.5, 1.5), 2),
                },
            )
            driver.wait_for_agent()
            driver.advance(rng.randint(1500, 4000))
        elif roll < 0.70:
            driver.emit(EventKind.REQUEST_IMAGE, {"prompt": rng.choice(_IMAGE_PROMPTS)})
            driver.advance(rng.randint(1500, 3000))
            driver.emit(
                EventKind.PLACE_ARTIFACT,
                {
                    "x": round(rng.uniform(20.0, cfg.canvas_w - 200.0), 1),
                    "y": round(rng.uniform(20.0, cfg.canvas_h - 200.0), 1),
                    "scale": round(rng.uniform(0.6, 1.4), 2),
                },
            )
            driver.wait_for_agent()
            driver.advance(rng.randint(1500, 4000))
        elif roll < 0.80:
            taught += 1
            driver.emit(EventKind.MODE_CHANGE, {"mode": "teach_object"})
            driver.advance(300)
            driver.draw_stroke(6, 700)
            driver.advance(400)
            driver.emit(EventKind.TEACH_OBJECT, {"label": f"glyph-{taught}"})
            driver.advance(driver.engine.config.turn_gap_ms + 400)
            driver.wait_for_agent()
            driver.emit(EventKind.MODE_CHANGE, {"mode": "ai"})
            driver.advance(600)
        elif roll < 0.92:
            driver.emit(
                EventKind.VOTE_UP if rng.random() < 0.8 else EventKind.VOTE_DOWN
            )
            driver.advance(rng.randint(800, 2000))
        else:
            driver.draw_stroke(6, rng.randint(500, 900))
            driver.advance(driver.engine.config.turn_gap_ms + 200)
            driver.wait_for_agent()
            driver.advance(rng.randint(800, 2000))
    _finish(driver)


def simulate_session(profile: str, duration_s: int, seed: int, index: int = 0) -> Session:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    combined = seed * 1_000_003 + index
    session = Session(
        id=f"{profile}-{seed}-{index:03d}",
        rng_seed=combined,
        group_label=profile,
    )
    engine = Engine(session)
    driver = _Driver(engine, random.Random(combined + 1), duration_s * 1000)
    if profile == "abstract":
        _run_abstract(driver)
    else:
        _run_representational(driver)
    return session


def simulate(profile: str, n_sessions: int, duration_s: int = 300, seed: int = 0) -> list[Session]:
    """Generate n deterministic sessions for one persona profile."""
    if n_sessions < 1:
        raise ValueError("need at least one session")
    return [simulate_session(profile, duration_s, seed, k) for k in range(n_sessions)]


__all__ = ["PROFILES", "simulate", "simulate_session"]
