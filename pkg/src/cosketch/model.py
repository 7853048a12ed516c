"""Shared domain vocabulary: events, strokes, turns, sessions, modes.

Everything downstream (coding, trends, metrics, visuals) is a pure function
of an event list plus an engine config, so the types here are immutable-ish
dataclasses and the two operations are deterministic derivations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Optional


class Actor(str, Enum):
    USER = "user"
    AGENT = "agent"

    def other(self) -> "Actor":
        return Actor.AGENT if self is Actor.USER else Actor.USER


class InteractionMode(float, Enum):
    """Coded interaction modes; the float value is the coded value."""

    COMMUNICATE = 1.0
    MANIPULATE_INTERFACE = 0.5
    WAIT = 0.0
    EXECUTE = -1.0


class DrawingMode(str, Enum):
    AI = "ai"
    DRAW_TOGETHER = "draw_together"
    EXTEND = "extend"
    MIMIC = "mimic"
    SHADE = "shade"
    PREDICTIVE = "predictive"
    STYLE = "style"
    TEACH_OBJECT = "teach_object"
    TEACH_STYLE = "teach_style"


class EventKind(str, Enum):
    PEN_DOWN = "pen_down"
    PEN_MOVE = "pen_move"
    PEN_UP = "pen_up"
    VOTE_UP = "vote_up"
    VOTE_DOWN = "vote_down"
    MODE_CHANGE = "mode_change"
    BRUSH_CHANGE = "brush_change"
    FILL = "fill"
    ERASE = "erase"
    UNDO = "undo"
    REDO = "redo"
    SMUDGE = "smudge"
    CLEAR_CANVAS = "clear_canvas"
    CHOOSE_COLOR = "choose_color"
    CHOOSE_LINE_WIDTH = "choose_line_width"
    PANEL_TOGGLE = "panel_toggle"
    REQUEST_SKETCH = "request_sketch"
    REQUEST_IMAGE = "request_image"
    TEACH_OBJECT = "teach_object"
    TEACH_STYLE = "teach_style"
    PLACE_ARTIFACT = "place_artifact"
    STYLE_APPLIED = "style_applied"
    AGENT_SPEECH = "agent_speech"
    AGENT_ANIMATION = "agent_animation"
    AGENT_STROKE_BEGIN = "agent_stroke_begin"
    AGENT_STROKE_END = "agent_stroke_end"


# Instantaneous events that count as communication for the coding pass.
# Mode changes and placement instructions are the user instructing the agent,
# which is a communication channel, not interface manipulation.
COMMUNICATE_KINDS = frozenset(
    {
        EventKind.VOTE_UP,
        EventKind.VOTE_DOWN,
        EventKind.MODE_CHANGE,
        EventKind.REQUEST_SKETCH,
        EventKind.REQUEST_IMAGE,
        EventKind.TEACH_OBJECT,
        EventKind.TEACH_STYLE,
        EventKind.PLACE_ARTIFACT,
        EventKind.AGENT_SPEECH,
        EventKind.AGENT_ANIMATION,
    }
)

MANIPULATE_KINDS = frozenset(
    {
        EventKind.BRUSH_CHANGE,
        EventKind.UNDO,
        EventKind.REDO,
        EventKind.CLEAR_CANVAS,
        EventKind.CHOOSE_COLOR,
        EventKind.CHOOSE_LINE_WIDTH,
        EventKind.PANEL_TOGGLE,
        EventKind.STYLE_APPLIED,
    }
)

# Instantaneous artistic actions (pen-down spans are handled separately).
EXECUTE_KINDS = frozenset({EventKind.FILL, EventKind.ERASE, EventKind.SMUDGE})

PEN_KINDS = frozenset({EventKind.PEN_DOWN, EventKind.PEN_MOVE, EventKind.PEN_UP})

RGBA = tuple[int, int, int, int]
DEFAULT_COLOR: RGBA = (0, 0, 0, 255)
DEFAULT_WIDTH = 2.0


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True, slots=True)
class Stroke:
    """One pen-down..pen-up contribution by a single actor."""

    points: tuple[Point, ...]
    actor: Actor
    t_start: int
    t_end: int
    width: float = DEFAULT_WIDTH
    color: RGBA = DEFAULT_COLOR

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("stroke needs at least one point")
        if self.t_end < self.t_start:
            raise ValueError("stroke ends before it starts")


@dataclass(frozen=True, slots=True)
class ActionEvent:
    """One timestamped atom of interaction; t is ms since session start."""

    t: int
    actor: Actor
    kind: EventKind
    payload: dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        return {"t": self.t, "actor": self.actor.value, "kind": self.kind.value, "payload": self.payload}

    @staticmethod
    def from_record(rec: dict[str, Any]) -> "ActionEvent":
        return ActionEvent(
            t=int(rec["t"]),
            actor=Actor(rec["actor"]),
            kind=EventKind(rec["kind"]),
            payload=dict(rec.get("payload") or {}),
        )


@dataclass(frozen=True, slots=True)
class Turn:
    """A contiguous contribution by one actor, bounded by the turn rules.

    counts_as_turn is False for agent output that merely fulfils a sketch or
    image request: the content stays available to the domain analysis but the
    turn is excluded from turn counts.
    """

    actor: Actor
    index: int
    strokes: tuple[Stroke, ...]
    t_start: int
    t_end: int
    counts_as_turn: bool = True
    source_algorithm: Optional[str] = None


@dataclass
class EngineConfig:
    tick_ms: int = 500
    turn_gap_ms: int = 3000
    recognition_confidence_threshold: float = 0.30
    frechet_similarity_fraction: float = 0.2
    vote_delta: float = 0.5
    weight_floor: float = 0.1
    macd_fast: int = 12
    macd_slow: int = 26
    macd_signal: int = 9
    hold_epsilon: float = 0.1
    coupling_distance_px: float = 50.0
    offer_distance_px: float = 150.0
    alpha: float = 0.05
    # Artifact plumbing, not part of the coded framework itself.
    canvas_w: float = 1280.0
    canvas_h: float = 800.0
    resample_points: int = 32
    pace_ratio: float = 1.0
    object_render_px: float = 120.0

    def __post_init__(self) -> None:
        for name in (
            "tick_ms",
            "turn_gap_ms",
            "recognition_confidence_threshold",
            "frechet_similarity_fraction",
            "vote_delta",
            "weight_floor",
            "macd_fast",
            "macd_slow",
            "macd_signal",
            "hold_epsilon",
            "coupling_distance_px",
            "offer_distance_px",
            "alpha",
            "canvas_w",
            "canvas_h",
            "resample_points",
            "pace_ratio",
            "object_render_px",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"config field {name} must be positive")
        if self.macd_fast >= self.macd_slow:
            raise ValueError("macd_fast must be smaller than macd_slow")

    def to_dict(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in sorted(self.__dataclass_fields__)}

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "EngineConfig":
        known = {k: v for k, v in d.items() if k in EngineConfig.__dataclass_fields__}
        return EngineConfig(**known)


@dataclass
class Session:
    """An event-sourced drawing session; strokes and turns are derived."""

    id: str
    rng_seed: int = 0
    group_label: Optional[str] = None
    config: EngineConfig = field(default_factory=EngineConfig)
    events: list[ActionEvent] = field(default_factory=list)

    @property
    def duration_ms(self) -> int:
        return self.events[-1].t if self.events else 0

    def strokes(self) -> list[Stroke]:
        return derive_strokes(self.events)

    def turns(self) -> list[Turn]:
        return derive_turns(self.events, self.config)


@dataclass(frozen=True, slots=True)
class Violation:
    index: int
    message: str

    def __str__(self) -> str:
        return f"event {self.index}: {self.message}"


def validate_event_stream(events: list[ActionEvent]) -> list[Violation]:
    """Collect every ordering/pairing violation; an empty list means ok."""
    violations: list[Violation] = []
    prev_t: Optional[int] = None
    pen_open: dict[Actor, bool] = {Actor.USER: False, Actor.AGENT: False}
    open_index: dict[Actor, int] = {}

    for i, ev in enumerate(events):
        if ev.t < 0:
            violations.append(Violation(i, "negative timestamp"))
        if prev_t is not None and ev.t < prev_t:
            violations.append(Violation(i, "non-monotone timestamps"))
        prev_t = ev.t

        if ev.kind is EventKind.PEN_DOWN:
            if pen_open[ev.actor]:
                violations.append(Violation(i, "pen_down while a stroke is already open"))
            pen_open[ev.actor] = True
            open_index[ev.actor] = i
        elif ev.kind is EventKind.PEN_MOVE:
            if not pen_open[ev.actor]:
                violations.append(Violation(i, "orphan pen_move outside a stroke"))
        elif ev.kind is EventKind.PEN_UP:
            if not pen_open[ev.actor]:
                violations.append(Violation(i, "pen_up without matching pen_down"))
            pen_open[ev.actor] = False

    for actor, is_open in pen_open.items():
        if is_open:
            violations.append(Violation(open_index[actor], f"unmatched pen_down by {actor.value}"))
    return violations


def derive_strokes(events: list[ActionEvent]) -> list[Stroke]:
    """Rebuild strokes from pen events, per actor, ordered by t_start.

    Malformed fragments (orphan moves, unclosed downs) are dropped rather
    than raised: validation reports them as data.
    """
    strokes: list[Stroke] = []
    pending: dict[Actor, dict[str, Any]] = {}

    for ev in events:
        if ev.kind is EventKind.PEN_DOWN:
            pending[ev.actor] = {
                "points": [Point(float(ev.payload.get("x", 0.0)), float(ev.payload.get("y", 0.0)))],
                "t_start": ev.t,
                "width": float(ev.payload.get("width", DEFAULT_WIDTH)),
                "color": tuple(ev.payload.get("color", DEFAULT_COLOR)),
            }
        elif ev.kind is EventKind.PEN_MOVE and ev.actor in pending:
            pending[ev.actor]["points"].append(
                Point(float(ev.payload.get("x", 0.0)), float(ev.payload.get("y", 0.0)))
            )
        elif ev.kind is EventKind.PEN_UP and ev.actor in pending:
            args = pending.pop(ev.actor)
            if "x" in ev.payload:
                args["points"].append(Point(float(ev.payload["x"]), float(ev.payload["y"])))
            strokes.append(
                Stroke(
                    points=tuple(args["points"]),
                    actor=ev.actor,
                    t_start=args["t_start"],
                    t_end=ev.t,
                    width=args["width"],
                    color=args["color"],  # type: ignore[arg-type]
                )
            )
    strokes.sort(key=lambda s: (s.t_start, s.t_end))
    return strokes


def _agent_emission_spans(events: list[ActionEvent]) -> list[tuple[int, int, str, Optional[str]]]:
    """(t_begin, t_end, purpose, algorithm) for each agent_stroke_begin..end pair."""
    spans: list[tuple[int, int, str, Optional[str]]] = []
    begin: Optional[ActionEvent] = None
    for ev in events:
        if ev.kind is EventKind.AGENT_STROKE_BEGIN:
            begin = ev
        elif ev.kind is EventKind.AGENT_STROKE_END and begin is not None:
            spans.append(
                (begin.t, ev.t, str(begin.payload.get("purpose", "turn")), begin.payload.get("algorithm"))
            )
            begin = None
    if begin is not None:  # unclosed emission at session end
        spans.append((begin.t, max(e.t for e in events), str(begin.payload.get("purpose", "turn")), begin.payload.get("algorithm")))
    return spans


def derive_turns(events: list[ActionEvent], config: EngineConfig) -> list[Turn]:
    """Group strokes into turns.

    User strokes merge while the inter-stroke gap stays under turn_gap_ms and
    the other actor drew nothing in that gap; a gap >= turn_gap_ms (inclusive
    boundary) or intervening content closes the turn. Agent strokes group by
    their emission span, whose purpose decides counts_as_turn: request
    fulfilment is kept but flagged False.
    """
    strokes = derive_strokes(events)
    spans = _agent_emission_spans(events)

    def span_for(stroke: Stroke) -> Optional[tuple[int, int, str, Optional[str]]]:
        for sp in spans:
            if sp[0] <= stroke.t_start <= sp[1]:
                return sp
        return None

    groups: list[dict[str, Any]] = []
    open_group: dict[Actor, Optional[dict[str, Any]]] = {Actor.USER: None, Actor.AGENT: None}

    for stroke in strokes:
        actor = stroke.actor
        current = open_group[actor]
        if actor is Actor.AGENT:
            sp = span_for(stroke)
            if current is not None and current.get("span") == sp and sp is not None:
                current["strokes"].append(stroke)
                continue
            group = {
                "actor": actor,
                "strokes": [stroke],
                "span": sp,
                "counts": sp is None or sp[2] != "request",
                "algorithm": sp[3] if sp else None,
            }
            open_group[actor] = group
            groups.append(group)
            continue

        if current is not None:
            gap = stroke.t_start - current["strokes"][-1].t_end
            intervened = any(
                other.actor is not actor
                and current["strokes"][-1].t_end <= other.t_start < stroke.t_start
                for other in strokes
            )
            if gap < config.turn_gap_ms and not intervened:
                current["strokes"].append(stroke)
                continue
        group = {"actor": actor, "strokes": [stroke], "span": None, "counts": True, "algorithm": None}
        open_group[actor] = group
        groups.append(group)

    groups.sort(key=lambda g: g["strokes"][0].t_start)
    turns = [
        Turn(
            actor=g["actor"],
            index=i,
            strokes=tuple(g["strokes"]),
            t_start=g["strokes"][0].t_start,
            t_end=max(s.t_end for s in g["strokes"]),
            counts_as_turn=bool(g["counts"]),
            source_algorithm=g["algorithm"],
        )
        for i, g in enumerate(groups)
    ]
    return turns


def tick_count(duration_ms: int, tick_ms: int) -> int:
    """Number of coding ticks covering [0, duration]; at least 1 when content exists."""
    if duration_ms <= 0:
        return 1 if duration_ms == 0 else 0
    return math.ceil(duration_ms / tick_ms)


def session_from_events(
    session_id: str,
    events: list[ActionEvent],
    config: Optional[EngineConfig] = None,
    rng_seed: int = 0,
    group_label: Optional[str] = None,
) -> Session:
    return Session(
        id=session_id,
        rng_seed=rng_seed,
        group_label=group_label,
        config=config or EngineConfig(),
        events=list(events),
    )


__all__ = [
    "Actor",
    "ActionEvent",
    "DrawingMode",
    "EngineConfig",
    "EventKind",
    "InteractionMode",
    "Point",
    "Session",
    "Stroke",
    "Turn",
    "Violation",
    "COMMUNICATE_KINDS",
    "MANIPULATE_KINDS",
    "EXECUTE_KINDS",
    "derive_strokes",
    "derive_turns",
    "session_from_events",
    "tick_count",
    "validate_event_stream",
]
