"""Session runtime: the turn timer, vote handling, and agent emission loop.

The engine owns one session under a single-writer contract. Time is always
injected (event timestamps and explicit tick calls), never read from the
wall clock, so a replayed script reproduces the session byte for byte.
Agent output is scheduled on a queue and materialized as clock time passes,
which keeps the event log monotone even while the user draws in parallel.
"""

from __future__ import annotations

import base64
import bisect
import hashlib
import random
from dataclasses import dataclass, field
from typing import Any, Optional

from .agent import (
    AgentPlan,
    DecisionContext,
    ImageGeneratorClient,
    StubImageGenerator,
    apply_vote,
    artistic_style_seed,
    ctm_decide,
    detect_repetition,
    match_object_label,
    recognize,
    render_object,
    seed_object_library,
    teach_object,
    teach_style,
)
from .geometry import Rect, bounding_box
from .model import (
    ActionEvent,
    Actor,
    DrawingMode,
    EventKind,
    Point,
    Session,
    Stroke,
)

SPEECH_LEAD_MS = 200  # speech precedes the first stroke by at least this much
MIN_EMISSION_MS = 600
MAX_EMISSION_MS = 10_000
REQUEST_EMISSION_MS = 800
IMAGE_FRAME_PX = 128.0


@dataclass(order=True)
class _Scheduled:
    t: int
    seq: int
    event: ActionEvent = field(compare=False)
    emission: bool = field(default=False, compare=False)


class Engine:
    """Drives one session: ingests user events, emits the agent's behavior."""

    def __init__(self, session: Session, image_client: Optional[ImageGeneratorClient] = None):
        self.session = session
        self.config = session.config
        self.rng = random.Random(session.rng_seed)
        self.image_client = image_client or StubImageGenerator()

        self.mode = DrawingMode.AI
        self.active_style = "artistic"
        self.selected_object: Optional[str] = None
        self.weights = {name: 1.0 for name in ("extend", "mimic", "shade", "noise", "style")}
        self.last_algorithm: Optional[str] = None
        self.objects = seed_object_library()
        self.styles = {"artistic": artistic_style_seed()}

        self._queue: list[_Scheduled] = []
        self._seq = 0
        self._outbox: list[dict[str, Any]] = []

        self._user_pen_down = False
        self._user_stroke_points: list[Point] = []
        self._user_stroke_start = 0
        self._user_stroke_style: tuple[float, Any] = (2.0, (0, 0, 0, 255))
        self._current_turn: list[Stroke] = []
        self._previous_turn: list[Stroke] = []
        self._turn_started_at: Optional[int] = None
        self._last_pen_up: Optional[int] = None
        self._user_lines: list[Stroke] = []
        self._cleared_at = 0

        self._agent_pen_open = False
        self._agent_emission_open = False
        self._pending_preview: Optional[AgentPlan] = None
        self._last_turn_span_ms = 2000
        self._pending_artifact: Optional[dict[str, Any]] = None
        self.last_raster: Optional[bytes] = None

    # ------------------------------------------------------------------ io

    def submit(self, event: ActionEvent) -> None:
        """Ingest one user (or externally replayed) event at its timestamp."""
        last_t = self.session.events[-1].t if self.session.events else 0
        if event.t < last_t:
            raise ValueError(f"event at t={event.t} behind session clock t={last_t}")
        self._drain(event.t)
        self._append(event)
        self._react(event)
        self._drain(event.t)

    def tick(self, now: int) -> None:
        """Advance the injected clock: emit due agent output, close user turns."""
        self._drain(now)
        if (
            self._current_turn
            and not self._user_pen_down
            and self._last_pen_up is not None
            and now - self._last_pen_up >= self.config.turn_gap_ms
            and not self._emission_pending()
            and self._pending_preview is None
        ):
            self._respond(now)
            self._drain(now)

    def take_outbox(self) -> list[dict[str, Any]]:
        out, self._outbox = self._outbox, []
        return out

    def busy(self) -> bool:
        """Agent output still scheduled on the emission queue."""
        return bool(self._queue)

    def emitting(self) -> bool:
        """A stroke emission is in flight (queued or a stroke left open)."""
        return self._agent_pen_open or self._agent_emission_open or self._emission_pending()

    # --------------------------------------------------------- event intake

    def _append(self, event: ActionEvent) -> None:
        self.session.events.append(event)
        if event.actor is Actor.AGENT:
            self._outbox.append({"type": "event", "event": event.to_record()})

    def _react(self, event: ActionEvent) -> None:
        handler = {
            EventKind.PEN_DOWN: self._on_pen_down,
            EventKind.PEN_MOVE: self._on_pen_move,
            EventKind.PEN_UP: self._on_pen_up,
            EventKind.VOTE_UP: self._on_vote_up,
            EventKind.VOTE_DOWN: self._on_vote_down,
            EventKind.MODE_CHANGE: self._on_mode_change,
            EventKind.REQUEST_SKETCH: self._on_request_sketch,
            EventKind.REQUEST_IMAGE: self._on_request_image,
            EventKind.PLACE_ARTIFACT: self._on_place_artifact,
            EventKind.TEACH_OBJECT: self._on_teach_object,
            EventKind.TEACH_STYLE: self._on_teach_style,
            EventKind.CLEAR_CANVAS: self._on_clear,
        }.get(event.kind)
        if handler is not None and event.actor is Actor.USER:
            handler(event)

    def _on_pen_down(self, ev: ActionEvent) -> None:
        self._user_pen_down = True
        self._user_stroke_points = [Point(float(ev.payload.get("x", 0)), float(ev.payload.get("y", 0)))]
        self._user_stroke_start = ev.t
        self._user_stroke_style = (
            float(ev.payload.get("width", 2.0)),
            tuple(ev.payload.get("color", (0, 0, 0, 255))),
        )
        if self._turn_started_at is None:
            self._turn_started_at = ev.t

    def _on_pen_move(self, ev: ActionEvent) -> None:
        if self._user_pen_down:
            self._user_stroke_points.append(
                Point(float(ev.payload.get("x", 0)), float(ev.payload.get("y", 0)))
            )

    def _on_pen_up(self, ev: ActionEvent) -> None:
        if not self._user_pen_down:
            return
        self._user_pen_down = False
        if "x" in ev.payload:
            self._user_stroke_points.append(Point(float(ev.payload["x"]), float(ev.payload["y"])))
        stroke = Stroke(
            points=tuple(self._user_stroke_points),
            actor=Actor.USER,
            t_start=self._user_stroke_start,
            t_end=ev.t,
            width=self._user_stroke_style[0],
            color=self._user_stroke_style[1],
        )
        self._current_turn.append(stroke)
        self._user_lines.append(stroke)
        self._last_pen_up = ev.t

    def _on_vote_up(self, ev: ActionEvent) -> None:
        self.weights = apply_vote(self.weights, self.last_algorithm, True, self.config)
        self._schedule(ev.t, EventKind.AGENT_ANIMATION, {"name": "jump"})
        if self._pending_preview is not None:
            plan = self._pending_preview
            self._pending_preview = None
            self._emit_plan_strokes(plan, ev.t, purpose="turn")

    def _on_vote_down(self, ev: ActionEvent) -> None:
        self.weights = apply_vote(self.weights, self.last_algorithm, False, self.config)
        if self._emission_pending():
            self._abort_emission(ev.t)
        self._schedule(ev.t, EventKind.AGENT_ANIMATION, {"name": "frown"})
        if self._pending_preview is not None:
            self._replan_preview(ev.t)

    def _on_mode_change(self, ev: ActionEvent) -> None:
        try:
            self.mode = DrawingMode(ev.payload.get("mode", "ai"))
        except ValueError:
            return
        detail = ev.payload.get("detail")
        if self.mode is DrawingMode.STYLE and detail:
            self.active_style = detail if detail in self.styles else self.active_style
        if self.mode is DrawingMode.DRAW_TOGETHER and detail:
            self.selected_object = detail

    def _on_request_sketch(self, ev: ActionEvent) -> None:
        label = str(ev.payload.get("label", ""))
        resolved = match_object_label(label, self.objects)
        if resolved is None:
            self._speak(ev.t, f"I don't know how to draw {label!r} yet. You could teach me!")
            return
        self._pending_artifact = {"kind": "sketch", "label": resolved}
        thumb = [
            [[p.x, p.y] for p in s.points]
            for s in self.objects[resolved].exemplar_strokes
        ]
        self._outbox.append({"type": "thumbnail", "kind": "sketch", "label": resolved, "strokes": thumb})
        self._speak(ev.t, f"Here is my {resolved} sketch. Tell me where to place it and how big.")

    def _on_request_image(self, ev: ActionEvent) -> None:
        prompt = str(ev.payload.get("prompt", ""))
        try:
            raster = self.image_client.generate(prompt, seed=self.rng.getrandbits(32))
        except Exception as exc:  # client failures surface as speech, not crashes
            self._speak(ev.t, f"Image generation failed ({exc}). Nothing was added.")
            return
        content_hash = hashlib.sha256(raster).hexdigest()[:16]
        self.last_raster = raster
        self._pending_artifact = {"kind": "image", "prompt": prompt, "hash": content_hash}
        self._outbox.append(
            {
                "type": "thumbnail",
                "kind": "image",
                "hash": content_hash,
                "data": base64.b64encode(raster).decode("ascii"),
            }
        )
        self._speak(ev.t, f"I generated an image for {prompt!r}. Tell me where to place it.")

    def _on_place_artifact(self, ev: ActionEvent) -> None:
        if self._pending_artifact is None:
            self._speak(ev.t, "There is nothing waiting to be placed.")
            return
        artifact = self._pending_artifact
        self._pending_artifact = None
        x = float(ev.payload.get("x", 0.0))
        y = float(ev.payload.get("y", 0.0))
        scale = float(ev.payload.get("scale", 1.0))
        if artifact["kind"] == "sketch":
            obj = self.objects[artifact["label"]]
            strokes = render_object(obj, Point(x, y), scale * self.config.object_render_px)
            algorithm = "request_sketch"
        else:
            side = scale * IMAGE_FRAME_PX
            frame = (
                Point(x, y),
                Point(x + side, y),
                Point(x + side, y + side),
                Point(x, y + side),
                Point(x, y),
            )
            strokes = [Stroke(frame, Actor.AGENT, 0, 0)]
            algorithm = "request_image"
        self._schedule_emission(
            strokes, ev.t, REQUEST_EMISSION_MS, purpose="request", algorithm=algorithm
        )

    def _on_teach_object(self, ev: ActionEvent) -> None:
        label = str(ev.payload.get("label", ""))
        strokes = self._current_turn or self._previous_turn
        if not label or not strokes:
            self._speak(ev.t, "Draw the object first, then tell me its name.")
            return
        self.objects, replaced = teach_object(self.objects, label, strokes, taught_at=ev.t)
        notice = " I replaced my earlier version." if replaced else ""
        self._speak(ev.t, f"Got it, I learned {label!r}.{notice} Ask me to sketch it anytime.")

    def _on_teach_style(self, ev: ActionEvent) -> None:
        name = str(ev.payload.get("name", ""))
        strokes = self._current_turn or self._previous_turn
        if not name or not strokes:
            self._speak(ev.t, "Draw some lines first, then tell me the style name.")
            return
        self.styles, replaced = teach_style(self.styles, name, strokes)
        notice = " I replaced the earlier style." if replaced else ""
        self._speak(ev.t, f"Got it, I learned the {name!r} style.{notice}")

    def _on_clear(self, ev: ActionEvent) -> None:
        self._cleared_at = ev.t
        self._current_turn = []
        self._previous_turn = []

    # ------------------------------------------------------------ the cycle

    def _respond(self, now: int) -> None:
        current = self._current_turn
        self._last_turn_span_ms = max(
            current[-1].t_end - current[0].t_start, self.config.tick_ms
        )
        repetition = bool(self._previous_turn) and detect_repetition(
            current, self._previous_turn, self.config
        )
        recognition = recognize(
            current,
            self.objects,
            self.config.recognition_confidence_threshold,
            self.config.resample_points,
        )
        ctx = DecisionContext(
            config=self.config,
            last_user_turn=list(current),
            last_user_line=current[-1],
            user_line_db=list(self._user_lines),
            objects=self.objects,
            styles=self.styles,
            active_style=self.active_style,
            selected_object=self.selected_object,
            occupied=self._occupied_boxes(),
        )
        plan = ctm_decide(self.mode, repetition, recognition, self.weights, self.rng, ctx)
        self.last_algorithm = plan.algorithm
        self._previous_turn = current
        self._current_turn = []
        self._turn_started_at = None
        self._last_pen_up = None

        self._speak(now, plan.speech)
        if plan.preview:
            self._pending_preview = plan
            self._outbox.append({"type": "preview", "strokes": _strokes_to_wire(plan.strokes)})
        elif plan.strokes:
            self._emit_plan_strokes(plan, now, purpose="turn")

    def _replan_preview(self, now: int) -> None:
        ctx = DecisionContext(
            config=self.config,
            last_user_turn=list(self._previous_turn),
            last_user_line=self._previous_turn[-1] if self._previous_turn else None,
            user_line_db=list(self._user_lines),
            objects=self.objects,
            styles=self.styles,
            active_style=self.active_style,
            selected_object=self.selected_object,
            occupied=self._occupied_boxes(),
        )
        plan = ctm_decide(self.mode, False, None, self.weights, self.rng, ctx)
        self.last_algorithm = plan.algorithm
        self._pending_preview = plan
        self._speak(now, plan.speech)
        self._outbox.append({"type": "preview", "strokes": _strokes_to_wire(plan.strokes)})

    def _emit_plan_strokes(self, plan: AgentPlan, now: int, purpose: str) -> None:
        total = int(
            min(
                max(self.config.pace_ratio * self._last_turn_span_ms, MIN_EMISSION_MS),
                MAX_EMISSION_MS,
            )
        )
        self._schedule_emission(
            plan.strokes, now + SPEECH_LEAD_MS, total, purpose=purpose, algorithm=plan.algorithm
        )

    # ------------------------------------------------------------ scheduling

    def _schedule(
        self, t: int, kind: EventKind, payload: dict[str, Any], emission: bool = False
    ) -> None:
        self._seq += 1
        item = _Scheduled(
            t=t,
            seq=self._seq,
            event=ActionEvent(t=t, actor=Actor.AGENT, kind=kind, payload=payload),
            emission=emission,
        )
        bisect.insort(self._queue, item)

    def _speak(self, t: int, text: str) -> None:
        self._schedule(t, EventKind.AGENT_SPEECH, {"text": text})

    def _schedule_emission(
        self,
        strokes: list[Stroke],
        t0: int,
        total_ms: int,
        purpose: str,
        algorithm: Optional[str],
    ) -> None:
        if not strokes:
            return
        payload: dict[str, Any] = {"purpose": purpose}
        if algorithm:
            payload["algorithm"] = algorithm
        self._schedule(t0, EventKind.AGENT_STROKE_BEGIN, payload, emission=True)
        slot = max(total_ms / len(strokes), 1.0)
        t_cursor = t0
        for i, stroke in enumerate(strokes):
            start = int(round(t0 + i * slot))
            end = int(round(start + 0.8 * slot))
            start = max(start, t_cursor)
            end = max(end, start)
            pts = stroke.points
            self._schedule(
                start,
                EventKind.PEN_DOWN,
                {"x": pts[0].x, "y": pts[0].y, "width": stroke.width, "color": list(stroke.color)},
                emission=True,
            )
            inner = pts[1:-1] if len(pts) > 2 else ()
            for j, p in enumerate(inner, start=1):
                tj = start + int(round(j * (end - start) / max(len(pts) - 1, 1)))
                self._schedule(tj, EventKind.PEN_MOVE, {"x": p.x, "y": p.y}, emission=True)
            if len(pts) > 1:
                self._schedule(
                    end, EventKind.PEN_UP, {"x": pts[-1].x, "y": pts[-1].y}, emission=True
                )
            else:
                self._schedule(end, EventKind.PEN_UP, {}, emission=True)
            t_cursor = end
        self._schedule(t_cursor + 1, EventKind.AGENT_STROKE_END, {}, emission=True)

    def _emission_pending(self) -> bool:
        return any(item.emission for item in self._queue)

    def _abort_emission(self, t: int) -> None:
        """Drop every scheduled emission event; close whatever is half-open."""
        self._queue = [item for item in self._queue if not item.emission]
        if self._agent_pen_open:
            self._append(ActionEvent(t=t, actor=Actor.AGENT, kind=EventKind.PEN_UP, payload={}))
            self._agent_pen_open = False
        if self._agent_emission_open:
            self._append(
                ActionEvent(
                    t=t,
                    actor=Actor.AGENT,
                    kind=EventKind.AGENT_STROKE_END,
                    payload={"aborted": True},
                )
            )
            self._agent_emission_open = False

    def _drain(self, now: int) -> None:
        while self._queue and self._queue[0].t <= now:
            item = self._queue.pop(0)
            self._append(item.event)
            if item.event.kind is EventKind.PEN_DOWN:
                self._agent_pen_open = True
            elif item.event.kind is EventKind.PEN_UP:
                self._agent_pen_open = False
            elif item.event.kind is EventKind.AGENT_STROKE_BEGIN:
                self._agent_emission_open = True
            elif item.event.kind is EventKind.AGENT_STROKE_END:
                self._agent_emission_open = False

    # ------------------------------------------------------------- helpers

    def _occupied_boxes(self) -> list[Rect]:
        return [
            bounding_box([s])
            for s in self.session.strokes()
            if s.t_start >= self._cleared_at
        ]

    @property
    def agent_turn_count(self) -> int:
        return sum(
            1 for t in self.session.turns() if t.actor is Actor.AGENT and t.counts_as_turn
        )


def _strokes_to_wire(strokes: list[Stroke]) -> list[list[list[float]]]:
    return [[[p.x, p.y] for p in s.points] for s in strokes]


__all__ = ["Engine"]
