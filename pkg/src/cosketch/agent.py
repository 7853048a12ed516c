"""The drawing partner's toolbox: recognition, preference weights, generators.

Neural pieces are replaced by exemplar geometry: recognition is a
nearest-exemplar classifier over normalized strokes, object completion is
exemplar alignment, and style responses reuse stored lines. Every function
here is pure; randomness comes in through an explicit rng.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from .geometry import (
    Rect,
    TransformSpec,
    bounding_box,
    centroid,
    discrete_frechet,
    find_open_space,
    polyline_length,
    resample_normalize,
    resample_points,
    transform_points,
    translate_points,
)
from .model import Actor, EngineConfig, Point, Stroke

REACTIVE_ALGORITHMS = ("extend", "mimic", "shade", "noise", "style")

DEFAULT_ALIASES = {
    "puppy": "dog",
    "pup": "dog",
    "doggy": "dog",
    "kitty": "cat",
    "kitten": "cat",
    "home": "house",
    "sunshine": "sun",
    "birdie": "bird",
}


@dataclass(frozen=True, slots=True)
class TaughtObject:
    label: str
    exemplar_strokes: tuple[Stroke, ...]  # group-normalized geometry
    taught_at: int = 0

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("object label must be non-empty")
        if not self.exemplar_strokes:
            raise ValueError("object needs at least one stroke")


@dataclass(frozen=True, slots=True)
class StyleSet:
    name: str
    lines: tuple[Stroke, ...]

    def __post_init__(self) -> None:
        if not self.lines:
            raise ValueError("style needs at least one line")


@dataclass(frozen=True, slots=True)
class RecognitionResult:
    label: str
    confidence: float


@dataclass
class AgentPlan:
    algorithm: str
    strokes: list[Stroke]
    speech: str
    preview: bool = False


class ImageGeneratorClient(Protocol):
    def generate(self, prompt: str, seed: int) -> bytes:
        """Return raster image bytes for the prompt, or raise on failure."""


class StubImageGenerator:
    """Deterministic placeholder raster keyed by the prompt hash (PPM P6)."""

    size = 16

    def generate(self, prompt: str, seed: int) -> bytes:
        digest = hashlib.sha256(f"{prompt}|{seed}".encode()).digest()
        header = f"P6\n{self.size} {self.size}\n255\n".encode()
        body = bytes(
            digest[(3 * (y * self.size + x) + c) % len(digest)]
            for y in range(self.size)
            for x in range(self.size)
            for c in range(3)
        )
        return header + body


class HttpImageGenerator:
    """Optional real backend: POSTs the prompt to a configured endpoint.

    Configured from the environment (COSKETCH_IMAGE_ENDPOINT, optional
    COSKETCH_IMAGE_KEY, COSKETCH_IMAGE_TIMEOUT_S); any HTTP or timeout
    failure propagates and surfaces as agent speech.
    """

    def __init__(self, endpoint: str, api_key: str = "", timeout_s: float = 30.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.timeout_s = timeout_s

    def generate(self, prompt: str, seed: int) -> bytes:
        import json
        import urllib.request

        request = urllib.request.Request(
            self.endpoint,
            data=json.dumps({"prompt": prompt, "seed": seed}).encode("utf-8"),
            headers={
                "Content-Type": "application/json",
                **({"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}),
            },
            method="POST",
        )
        with urllib.request.urlopen(request, timeout=self.timeout_s) as response:
            return response.read()


def image_client_from_env(environ=None) -> ImageGeneratorClient:
    import os

    env = os.environ if environ is None else environ
    endpoint = env.get("COSKETCH_IMAGE_ENDPOINT")
    if not endpoint:
        return StubImageGenerator()
    return HttpImageGenerator(
        endpoint,
        api_key=env.get("COSKETCH_IMAGE_KEY", ""),
        timeout_s=float(env.get("COSKETCH_IMAGE_TIMEOUT_S", "30")),
    )


def default_weights() -> dict[str, float]:
    return {name: 1.0 for name in REACTIVE_ALGORITHMS}


def apply_vote(
    weights: dict[str, float], last_algorithm: Optional[str], vote_up: bool, config: EngineConfig
) -> dict[str, float]:
    """Linear additive preference update, floored so every algorithm stays reachable."""
    if last_algorithm is None or last_algorithm not in weights:
        return dict(weights)
    updated = dict(weights)
    delta = config.vote_delta if vote_up else -config.vote_delta
    updated[last_algorithm] = max(config.weight_floor, updated[last_algorithm] + delta)
    return updated


def select_algorithm(weights: dict[str, float], rng: random.Random) -> str:
    """Sample an algorithm id with probability weight / total."""
    total = sum(weights.values())
    pick = rng.random() * total
    acc = 0.0
    for name, w in weights.items():
        acc += w
        if pick < acc:
            return name
    return next(reversed(weights))


def normalize_stroke_group(strokes: Sequence[Stroke]) -> tuple[Stroke, ...]:
    """Normalize strokes jointly: shared centroid to origin, group diagonal to 1."""
    pts = [p for s in strokes for p in s.points]
    if not pts:
        raise ValueError("no points to normalize")
    c = centroid(pts)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
    out = []
    for s in strokes:
        if diag == 0.0:
            new_points = tuple(Point(0.0, 0.0) for _ in s.points)
        else:
            new_points = tuple(Point((p.x - c.x) / diag, (p.y - c.y) / diag) for p in s.points)
        out.append(
            Stroke(new_points, s.actor, s.t_start, s.t_end, s.width, s.color)
        )
    return tuple(out)


def _concat_points(strokes: Sequence[Stroke]) -> list[Point]:
    return [p for s in strokes for p in s.points]


def detect_repetition(
    current_turn_strokes: Sequence[Stroke],
    previous_turn_strokes: Sequence[Stroke],
    config: EngineConfig,
) -> bool:
    """True when any current stroke nearly repeats a previous-turn stroke.

    The threshold scales with the previous stroke's own bounding-box
    diagonal so the check is size-invariant.
    """
    for prev in previous_turn_strokes:
        diag = bounding_box([prev]).diagonal
        threshold = config.frechet_similarity_fraction * diag
        for cur in current_turn_strokes:
            if discrete_frechet(cur.points, prev.points) <= threshold:
                return True
    return False


def rank_matches(
    turn_strokes: Sequence[Stroke],
    library: dict[str, TaughtObject],
    n_points: int = 32,
) -> list[RecognitionResult]:
    """All library objects scored against the turn content, best first."""
    if not library or not turn_strokes:
        return []
    query = resample_normalize(_concat_points(turn_strokes), n_points)
    results = []
    for label, obj in library.items():
        exemplar = resample_normalize(_concat_points(obj.exemplar_strokes), n_points)
        d = discrete_frechet(query, exemplar)
        results.append(RecognitionResult(label=label, confidence=max(0.0, 1.0 - d / 2.0)))
    results.sort(key=lambda r: (-r.confidence, r.label))
    return results


def recognize(
    turn_strokes: Sequence[Stroke],
    library: dict[str, TaughtObject],
    threshold: float = 0.30,
    n_points: int = 32,
) -> Optional[RecognitionResult]:
    """Best exemplar match, or None below the confidence threshold."""
    ranked = rank_matches(turn_strokes, library, n_points)
    if ranked and ranked[0].confidence >= threshold:
        return ranked[0]
    return None


def match_object_label(
    recognized_label: str,
    object_database: dict[str, TaughtObject],
    aliases: Optional[dict[str, str]] = None,
) -> Optional[str]:
    """Exact case-insensitive label match, then alias table, else None."""
    lowered = recognized_label.strip().lower()
    for label in object_database:
        if label.lower() == lowered:
            return label
    alias_map = DEFAULT_ALIASES if aliases is None else aliases
    target = alias_map.get(lowered)
    if target is not None:
        for label in object_database:
            if label.lower() == target.lower():
                return label
    return None


def teach_object(
    library: dict[str, TaughtObject], label: str, strokes: Sequence[Stroke], taught_at: int = 0
) -> tuple[dict[str, TaughtObject], bool]:
    """Store a normalized exemplar; returns (library, replaced_existing)."""
    if not label or not strokes:
        raise ValueError("teaching needs a label and at least one stroke")
    replaced = any(existing.lower() == label.lower() for existing in library)
    updated = {k: v for k, v in library.items() if k.lower() != label.lower()}
    updated[label] = TaughtObject(
        label=label, exemplar_strokes=normalize_stroke_group(strokes), taught_at=taught_at
    )
    return updated, replaced


def teach_style(
    styles: dict[str, StyleSet], name: str, strokes: Sequence[Stroke]
) -> tuple[dict[str, StyleSet], bool]:
    if not name or not strokes:
        raise ValueError("teaching needs a name and at least one stroke")
    replaced = any(existing.lower() == name.lower() for existing in styles)
    updated = {k: v for k, v in styles.items() if k.lower() != name.lower()}
    updated[name] = StyleSet(name=name, lines=tuple(strokes))
    return updated, replaced


def render_object(
    obj: TaughtObject, top_left: Point, scale_px: float
) -> list[Stroke]:
    """Place a normalized exemplar on canvas: bbox top-left at the anchor,
    diagonal scaled to scale_px."""
    box = bounding_box(obj.exemplar_strokes)
    out = []
    for s in obj.exemplar_strokes:
        pts = [
            Point(top_left.x + (p.x - box.x) * scale_px, top_left.y + (p.y - box.y) * scale_px)
            for p in s.points
        ]
        out.append(Stroke(tuple(pts), Actor.AGENT, 0, 0, s.width, s.color))
    return out


def plan_object_drawing(
    obj: TaughtObject, occupied: Sequence[Rect], canvas: Rect, render_px: float
) -> list[Stroke]:
    """Draw the exemplar in open space; overlap the canvas center as a last resort."""
    box = bounding_box(obj.exemplar_strokes)
    w = max(box.w * render_px, 1.0)
    h = max(box.h * render_px, 1.0)
    spot = find_open_space(occupied, canvas, (min(w, canvas.w), min(h, canvas.h)))
    if spot is None:
        spot = Point(canvas.x + (canvas.w - w) / 2.0, canvas.y + (canvas.h - h) / 2.0)
    return render_object(obj, spot, render_px)


def generate_extend(
    last_user_line: Optional[Stroke],
    line_database: Sequence[Stroke],
    rng: random.Random,
    repetition: bool = False,
) -> list[Stroke]:
    """Continue the user's last line with their own repeated input or a stored line."""
    if last_user_line is None:
        raise ValueError("extend needs the user's last line")
    if repetition or not line_database:
        segment = last_user_line
    else:
        segment = line_database[rng.randrange(len(line_database))]
    anchor = last_user_line.points[-1]
    dx = anchor.x - segment.points[0].x
    dy = anchor.y - segment.points[0].y
    pts = translate_points(segment.points, dx, dy)
    return [Stroke(tuple(pts), Actor.AGENT, 0, 0, last_user_line.width, last_user_line.color)]


MIMIC_ROTATE_DEG = 30.0
MIMIC_SCALE_RANGE = (0.8, 1.2)


def generate_mimic(last_user_strokes: Sequence[Stroke], rng: random.Random) -> list[Stroke]:
    """Imitate the whole last contribution with one seeded rotate/scale/translate."""
    if not last_user_strokes:
        raise ValueError("mimic needs the user's last turn")
    box = bounding_box(last_user_strokes)
    rotate = rng.uniform(-MIMIC_ROTATE_DEG, MIMIC_ROTATE_DEG)
    scale = rng.uniform(*MIMIC_SCALE_RANGE)
    dx = rng.uniform(-box.w, box.w)
    dy = rng.uniform(-box.h, box.h)
    spec = TransformSpec(translate=(dx, dy), rotate_deg=rotate, scale=scale)
    pivot = centroid(_concat_points(last_user_strokes))
    out = []
    for s in last_user_strokes:
        pts = transform_points(s.points, spec, about=pivot)
        out.append(Stroke(tuple(pts), Actor.AGENT, 0, 0, s.width, s.color))
    return out


SHADE_SPACING_PX = 8.0


def generate_shade(last_user_strokes: Sequence[Stroke]) -> list[Stroke]:
    """Parallel 45-degree hatch segments clipped to the turn's bounding box."""
    if not last_user_strokes:
        raise ValueError("shade needs the user's last turn")
    box = bounding_box(last_user_strokes)
    if box.w == 0 or box.h == 0:
        cx, cy = box.x + box.w / 2.0, box.y + box.h / 2.0
        r = SHADE_SPACING_PX / 2.0
        pts = (Point(cx - r, cy + r), Point(cx + r, cy - r))
        return [Stroke(pts, Actor.AGENT, 0, 0)]
    out = []
    n_lines = math.ceil((box.w + box.h) / SHADE_SPACING_PX) - 1
    for k in range(1, n_lines + 1):
        c = box.x + box.y + k * SHADE_SPACING_PX
        x_lo = max(box.x, c - (box.y + box.h))
        x_hi = min(box.x + box.w, c - box.y)
        if x_lo > x_hi:
            continue
        pts = (Point(x_lo, c - x_lo), Point(x_hi, c - x_hi))
        out.append(Stroke(pts, Actor.AGENT, 0, 0))
    return out


NOISE_AMPLITUDE_PX = 4.0


def generate_noise(last_user_strokes: Sequence[Stroke], rng: random.Random) -> list[Stroke]:
    """Redraw the last contribution loosely: slight offset plus per-point jitter."""
    if not last_user_strokes:
        raise ValueError("noise needs the user's last turn")
    box = bounding_box(last_user_strokes)
    dx = rng.uniform(-box.w / 4.0 - 10.0, box.w / 4.0 + 10.0)
    dy = rng.uniform(-box.h / 4.0 - 10.0, box.h / 4.0 + 10.0)
    spec = TransformSpec(translate=(dx, dy), noise_amplitude=NOISE_AMPLITUDE_PX)
    out = []
    for s in last_user_strokes:
        pts = transform_points(s.points, spec, rng=rng)
        out.append(Stroke(tuple(pts), Actor.AGENT, 0, 0, s.width, s.color))
    return out


def generate_style_response(
    style: StyleSet,
    rng: random.Random,
    occupied: Sequence[Rect],
    canvas: Rect,
) -> list[Stroke]:
    """A stored line from the style set, placed in open space."""
    line = style.lines[rng.randrange(len(style.lines))]
    box = bounding_box([line])
    w, h = max(box.w, 1.0), max(box.h, 1.0)
    spot = find_open_space(occupied, canvas, (min(w, canvas.w), min(h, canvas.h)))
    if spot is None:
        spot = Point(canvas.x + (canvas.w - w) / 2.0, canvas.y + (canvas.h - h) / 2.0)
    pts = translate_points(line.points, spot.x - box.x, spot.y - box.y)
    return [Stroke(tuple(pts), Actor.AGENT, 0, 0, line.width, line.color)]


COMPLETION_SCALE_FACTORS = (0.8, 0.9, 1.0, 1.1, 1.2)


def complete_object(
    user_first_strokes: Sequence[Stroke], taught_object: TaughtObject, n_points: int = 32
) -> list[Stroke]:
    """Finish an object the user started.

    Aligns the exemplar's first stroke to the user's first stroke with a
    coarse translate+uniform-scale grid search minimizing Fréchet distance,
    then emits the exemplar's remaining strokes under that alignment. A
    single-stroke exemplar has nothing left to add.
    """
    if not user_first_strokes:
        raise ValueError("completion needs the user's starting stroke")
    if len(taught_object.exemplar_strokes) < 2:
        return []
    user_first = user_first_strokes[0]
    ex_first = taught_object.exemplar_strokes[0]
    user_diag = bounding_box([user_first]).diagonal
    ex_diag = bounding_box([ex_first]).diagonal
    if ex_diag > 0 and user_diag > 0:
        base_scale = user_diag / ex_diag
    else:
        ex_len = polyline_length(ex_first.points)
        base_scale = (polyline_length(user_first.points) / ex_len) if ex_len > 0 else 1.0
    c_ex = centroid(ex_first.points)
    c_user = centroid(user_first.points)
    jitter = 0.1 * user_diag
    offsets = (
        [(dx, dy) for dx in (-jitter, 0.0, jitter) for dy in (-jitter, 0.0, jitter)]
        if jitter > 0
        else [(0.0, 0.0)]
    )

    def aligned(points: Sequence[Point], scale: float, off: tuple[float, float]) -> list[Point]:
        return [
            Point(
                (p.x - c_ex.x) * scale + c_user.x + off[0],
                (p.y - c_ex.y) * scale + c_user.y + off[1],
            )
            for p in points
        ]

    target = resample_points(user_first.points, n_points)
    best: Optional[tuple[float, float, tuple[float, float]]] = None
    for factor in COMPLETION_SCALE_FACTORS:
        scale = base_scale * factor
        for off in offsets:
            candidate = resample_points(aligned(ex_first.points, scale, off), n_points)
            cost = discrete_frechet(candidate, target)
            if best is None or cost < best[0] - 1e-12:
                best = (cost, scale, off)
    assert best is not None
    _, scale, off = best
    out = []
    for s in taught_object.exemplar_strokes[1:]:
        pts = aligned(s.points, scale, off)
        out.append(Stroke(tuple(pts), Actor.AGENT, 0, 0, s.width, s.color))
    return out


def _polyline(points: Sequence[tuple[float, float]]) -> Stroke:
    return Stroke(tuple(Point(float(x), float(y)) for x, y in points), Actor.AGENT, 0, 0)


def _circle(cx: float, cy: float, r: float, n: int = 16) -> Stroke:
    pts = [
        (cx + r * math.cos(2 * math.pi * i / n), cy + r * math.sin(2 * math.pi * i / n))
        for i in range(n + 1)
    ]
    return _polyline(pts)


def seed_object_library() -> dict[str, TaughtObject]:
    """Built-in objects the agent knows how to draw before being taught."""
    shapes: dict[str, list[Stroke]] = {
        "house": [
            _polyline([(0, 60), (0, 30), (25, 10), (50, 30), (50, 60), (0, 60)]),
            _polyline([(20, 60), (20, 45), (30, 45), (30, 60)]),
        ],
        "tree": [
            _polyline([(28, 90), (28, 55), (32, 55), (32, 90)]),
            _circle(30, 38, 20),
        ],
        "sun": [
            _circle(30, 30, 16),
            *[
                _polyline(
                    [
                        (30 + 20 * math.cos(a), 30 + 20 * math.sin(a)),
                        (30 + 28 * math.cos(a), 30 + 28 * math.sin(a)),
                    ]
                )
                for a in [i * math.pi / 4 for i in range(8)]
            ],
        ],
        "star": [
            _polyline(
                [
                    (
                        30 + (22 if i % 2 == 0 else 9) * math.cos(i * math.pi / 5 - math.pi / 2),
                        30 + (22 if i % 2 == 0 else 9) * math.sin(i * math.pi / 5 - math.pi / 2),
                    )
                    for i in range(11)
                ]
            )
        ],
        "fish": [
            _polyline(
                [
                    (10, 30),
                    (25, 18),
                    (45, 22),
                    (55, 30),
                    (45, 38),
                    (25, 42),
                    (10, 30),
                ]
            ),
            _polyline([(55, 30), (66, 22), (66, 38), (55, 30)]),
        ],
        "bird": [
            _polyline([(10, 30), (20, 22), (30, 30)]),
            _polyline([(30, 30), (40, 22), (50, 30)]),
        ],
        "cat": [
            _circle(30, 35, 18),
            _polyline([(18, 22), (14, 8), (28, 18)]),
            _polyline([(42, 22), (46, 8), (32, 18)]),
        ],
        "dog": [
            _circle(30, 35, 18),
            _polyline([(14, 28), (6, 40), (16, 44)]),
            _polyline([(46, 28), (54, 40), (44, 44)]),
        ],
    }
    return {
        label: TaughtObject(label=label, exemplar_strokes=normalize_stroke_group(strokes))
        for label, strokes in shapes.items()
    }


def artistic_style_seed() -> StyleSet:
    """Built-in flowing lines used by the default artistic style."""
    lines = []
    for k in range(12):
        phase = k * 0.7
        amp = 12 + 3 * (k % 4)
        pts = [
            (6 * i, 30 + amp * math.sin(0.35 * i + phase) + 2 * (k % 3))
            for i in range(24)
        ]
        lines.append(_polyline(pts))
    return StyleSet(name="artistic", lines=tuple(lines))


@dataclass
class DecisionContext:
    """Everything a decision needs besides the detector outputs."""

    config: EngineConfig
    last_user_turn: list[Stroke] = field(default_factory=list)
    last_user_line: Optional[Stroke] = None
    user_line_db: list[Stroke] = field(default_factory=list)
    objects: dict[str, TaughtObject] = field(default_factory=dict)
    styles: dict[str, StyleSet] = field(default_factory=dict)
    active_style: str = "artistic"
    selected_object: Optional[str] = None
    occupied: list[Rect] = field(default_factory=list)
    repetition: bool = False


def _canvas(config: EngineConfig) -> Rect:
    return Rect(0.0, 0.0, config.canvas_w, config.canvas_h)


def _run_algorithm(name: str, ctx: DecisionContext, rng: random.Random) -> AgentPlan:
    if name == "extend":
        strokes = generate_extend(ctx.last_user_line, ctx.user_line_db, rng, ctx.repetition)
        speech = "I'll extend your last line." if not ctx.repetition else (
            "You're repeating a pattern, so I'll keep it going."
        )
        return AgentPlan("extend", strokes, speech)
    if name == "mimic":
        return AgentPlan(
            "mimic", generate_mimic(ctx.last_user_turn, rng), "I'll mimic your last contribution."
        )
    if name == "shade":
        return AgentPlan(
            "shade", generate_shade(ctx.last_user_turn), "I'll add some shading to that."
        )
    if name == "noise":
        return AgentPlan(
            "noise", generate_noise(ctx.last_user_turn, rng), "I'll riff on your lines loosely."
        )
    if name == "style":
        style = ctx.styles[ctx.active_style]
        strokes = generate_style_response(style, rng, ctx.occupied, _canvas(ctx.config))
        return AgentPlan("style", strokes, f"Here is a line in the {style.name} style.")
    raise ValueError(f"unknown algorithm {name!r}")


DrawingModeLike = object  # DrawingMode enum or its string value


def ctm_decide(
    mode: DrawingModeLike,
    repetition_flag: bool,
    recognition: Optional[RecognitionResult],
    weights: dict[str, float],
    rng: random.Random,
    ctx: DecisionContext,
) -> AgentPlan:
    """Pick the agent's next action once a user turn has closed.

    Outside AI mode the drawing mode dictates the algorithm. In AI mode a
    repetition flag forces extend, a recognition hit draws the matched
    object in open space, and otherwise the preference weights drive a
    seeded sample over the reactive algorithms.
    """
    ctx.repetition = repetition_flag
    mode_value = getattr(mode, "value", mode)
    if mode_value in ("extend", "mimic", "shade"):
        return _run_algorithm(mode_value, ctx, rng)
    if mode_value == "style":
        return _run_algorithm("style", ctx, rng)
    if mode_value == "draw_together":
        label = ctx.selected_object
        obj = ctx.objects.get(label) if label else None
        if obj is None:
            return AgentPlan("complete", [], "Pick an object for us to draw together first.")
        strokes = complete_object(ctx.last_user_turn, obj, ctx.config.resample_points)
        if not strokes:
            return AgentPlan(
                "complete", [], f"My {obj.label} exemplar is a single stroke; nothing to add."
            )
        return AgentPlan("complete", strokes, f"I'll finish the {obj.label} with you.")
    if mode_value in ("teach_object", "teach_style"):
        return AgentPlan(
            "teach_ack", [], "I'm watching. Tell me the name when you're done drawing."
        )

    preview = mode_value == "predictive"
    if repetition_flag:
        plan = _run_algorithm("extend", ctx, rng)
    elif recognition is not None:
        obj = ctx.objects[recognition.label]
        strokes = plan_object_drawing(
            obj, ctx.occupied, _canvas(ctx.config), ctx.config.object_render_px
        )
        plan = AgentPlan(
            "object",
            strokes,
            f"That looks like a {recognition.label}! I'll draw one too.",
        )
    else:
        plan = _run_algorithm(select_algorithm(weights, rng), ctx, rng)
    if preview:
        plan.preview = True
        plan.speech = "Here is what I plan to draw. Vote up to draw it, down for a new idea."
    return plan


__all__ = [
    "AgentPlan",
    "DecisionContext",
    "HttpImageGenerator",
    "ImageGeneratorClient",
    "RecognitionResult",
    "StubImageGenerator",
    "StyleSet",
    "TaughtObject",
    "REACTIVE_ALGORITHMS",
    "apply_vote",
    "artistic_style_seed",
    "complete_object",
    "ctm_decide",
    "default_weights",
    "detect_repetition",
    "generate_extend",
    "generate_mimic",
    "generate_noise",
    "generate_shade",
    "generate_style_response",
    "image_client_from_env",
    "match_object_label",
    "normalize_stroke_group",
    "plan_object_drawing",
    "rank_matches",
    "recognize",
    "render_object",
    "seed_object_library",
    "select_algorithm",
    "teach_object",
    "teach_style",
]
