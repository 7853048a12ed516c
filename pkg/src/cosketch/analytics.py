"""Per-session metric suite and two-group statistical comparison.

Couplings, collaboration counts, and turn rhythm all reduce the derived
turn/event structures; the group comparison runs Welch's unequal-variance
t-test with p-values from an incomplete-beta t CDF so results do not depend
on an external stats stack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .coding import CodeSeries, csm_curve, curve_stats, mode_counts
from .geometry import bounding_box, centroid, min_point_distance, stroke_length
from .model import (
    COMMUNICATE_KINDS,
    EXECUTE_KINDS,
    MANIPULATE_KINDS,
    ActionEvent,
    Actor,
    EngineConfig,
    EventKind,
    InteractionMode,
    Session,
    Turn,
    tick_count,
)

# Algorithms that transform the partner's latest content directly, making the
# producing turn responsive by construction.
REACTIVE_ON_CONTENT = frozenset({"extend", "mimic", "shade", "noise", "complete"})


@dataclass(frozen=True, slots=True)
class Coupling:
    depth: int
    duration_ms: int
    initiator: Actor
    decoupler: Actor
    member_turn_indices: tuple[int, ...]


@dataclass
class CollaborationCounts:
    new_ideas: dict[Actor, int] = field(default_factory=lambda: {a: 0 for a in Actor})
    accepted: dict[Actor, int] = field(default_factory=lambda: {a: 0 for a in Actor})
    rejected: dict[Actor, int] = field(default_factory=lambda: {a: 0 for a in Actor})
    elaborations: dict[Actor, int] = field(default_factory=lambda: {a: 0 for a in Actor})
    objects_requested: int = 0


@dataclass
class ActorMetrics:
    communicate_count: int
    manipulate_count: int
    wait_count: int
    execute_count: int
    mean_code: float
    slope: float
    r_squared: Optional[float]
    total_lines: int
    total_line_length: float
    lines_per_turn: Optional[float]
    avg_line_length_per_turn: Optional[float]
    turn_count: int


@dataclass
class MetricTable:
    user: ActorMetrics
    agent: ActorMetrics
    coupling_count: int
    collaboration: CollaborationCounts

    def flatten(self) -> dict[str, Optional[float]]:
        """Scalar metric map used by the group comparison."""
        out: dict[str, Optional[float]] = {}
        for actor, metrics in (("user", self.user), ("agent", self.agent)):
            out[f"{actor}_communicate_count"] = float(metrics.communicate_count)
            out[f"{actor}_manipulate_count"] = float(metrics.manipulate_count)
            out[f"{actor}_wait_count"] = float(metrics.wait_count)
            out[f"{actor}_execute_count"] = float(metrics.execute_count)
            out[f"{actor}_mean_code"] = float(metrics.mean_code)
            out[f"{actor}_slope"] = float(metrics.slope)
            out[f"{actor}_r_squared"] = None if metrics.r_squared is None else float(metrics.r_squared)
            out[f"{actor}_total_lines"] = float(metrics.total_lines)
            out[f"{actor}_total_line_length"] = float(metrics.total_line_length)
            out[f"{actor}_lines_per_turn"] = (
                None if metrics.lines_per_turn is None else float(metrics.lines_per_turn)
            )
            out[f"{actor}_avg_line_length_per_turn"] = (
                None
                if metrics.avg_line_length_per_turn is None
                else float(metrics.avg_line_length_per_turn)
            )
            out[f"{actor}_turn_count"] = float(metrics.turn_count)
        out["coupling_count"] = float(self.coupling_count)
        for a in Actor:
            out[f"{a.value}_new_ideas"] = float(self.collaboration.new_ideas[a])
            out[f"{a.value}_accepted"] = float(self.collaboration.accepted[a])
            out[f"{a.value}_rejected"] = float(self.collaboration.rejected[a])
            out[f"{a.value}_elaborations"] = float(self.collaboration.elaborations[a])
        out["objects_requested"] = float(self.collaboration.objects_requested)
        return out


class RhythmKind(str, Enum):
    DRAW = "draw"
    REGULATE = "regulate"
    WAIT = "wait"  # agent drawing, user idle
    PAUSE = "pause"  # nobody acting


@dataclass(frozen=True, slots=True)
class RhythmSegment:
    kind: RhythmKind
    duration_ms: int


@dataclass(frozen=True, slots=True)
class TurnWindow:
    turn_index: int
    actor: Actor
    t_start: int
    t_end: int
    segments: tuple[RhythmSegment, ...]


@dataclass(frozen=True, slots=True)
class MetricComparison:
    mean_a: float
    mean_b: float
    t: float
    df: float
    p: float
    significant: bool


@dataclass
class GroupComparison:
    alpha: float
    n_a: int
    n_b: int
    metrics: dict[str, MetricComparison]
    excluded: dict[str, str]


def _turn_responsive(prev: Turn, cur: Turn, config: EngineConfig) -> bool:
    """Whether cur responds to prev (the other actor's preceding turn)."""
    if cur.actor is prev.actor:
        return False
    if cur.actor is Actor.AGENT and cur.source_algorithm in REACTIVE_ON_CONTENT:
        return True
    prev_points = [p for s in prev.strokes for p in s.points]
    cur_points = [p for s in cur.strokes for p in s.points]
    if not prev_points or not cur_points:
        return False
    if min_point_distance(prev_points, cur_points) <= config.coupling_distance_px:
        return True
    return bounding_box(prev.strokes).intersects(bounding_box(cur.strokes))


def detect_couplings(turns: Sequence[Turn], config: EngineConfig) -> list[Coupling]:
    """Maximal chains of mutually responsive, actor-alternating turns.

    Only counts_as_turn turns participate: request fulfilment is a tool use,
    not an initiative that can couple.
    """
    counting = [t for t in turns if t.counts_as_turn]
    couplings: list[Coupling] = []
    chain: list[Turn] = []

    def close(decoupler: Actor) -> None:
        if len(chain) >= 2:
            couplings.append(
                Coupling(
                    depth=len(chain),
                    duration_ms=chain[-1].t_end - chain[0].t_start,
                    initiator=chain[0].actor,
                    decoupler=decoupler,
                    member_turn_indices=tuple(t.index for t in chain),
                )
            )

    for turn in counting:
        if chain and _turn_responsive(chain[-1], turn, config):
            chain.append(turn)
            continue
        if chain:
            close(decoupler=turn.actor)
        chain = [turn]
    if chain:
        close(decoupler=chain[-1].actor)
    return couplings


def collaboration_dynamics(
    turns: Sequence[Turn],
    couplings: Sequence[Coupling],
    events: Sequence[ActionEvent],
    config: EngineConfig,
) -> CollaborationCounts:
    """Improv-style offer bookkeeping: new ideas, acceptance, rejection, elaboration.

    A new idea is a counting turn spatially isolated from everything drawn
    before it and not responsive to the previous turn. Rejection (a downvote
    or erase/undo by the partner inside the response window) is checked
    before acceptance so the two stay mutually exclusive per idea.
    """
    counts = CollaborationCounts()
    counts.objects_requested = sum(
        1 for ev in events if ev.kind in (EventKind.REQUEST_SKETCH, EventKind.REQUEST_IMAGE)
    )

    all_strokes = sorted((s for t in turns for s in t.strokes), key=lambda s: s.t_start)
    counting = [t for t in turns if t.counts_as_turn]
    session_end = max((ev.t for ev in events), default=0)

    for pos, turn in enumerate(counting):
        turn_points = [p for s in turn.strokes for p in s.points]
        if not turn_points:
            continue
        center = centroid(turn_points)
        prior_points = [
            p for s in all_strokes if s.t_start < turn.t_start for p in s.points
        ]
        isolated = (
            not prior_points
            or min_point_distance([center], prior_points) > config.offer_distance_px
        )
        responsive = pos > 0 and _turn_responsive(counting[pos - 1], turn, config)
        if not isolated or responsive:
            continue
        counts.new_ideas[turn.actor] += 1

        partner = turn.actor.other()
        next_partner_turn = next(
            (t for t in counting[pos + 1 :] if t.actor is partner), None
        )
        window_end = next_partner_turn.t_end if next_partner_turn else session_end
        rejected = any(
            ev.actor is partner
            and ev.kind in (EventKind.VOTE_DOWN, EventKind.ERASE, EventKind.UNDO)
            and turn.t_start < ev.t <= window_end
            for ev in events
        )
        if rejected:
            counts.rejected[turn.actor] += 1
        elif next_partner_turn is not None and _turn_responsive(turn, next_partner_turn, config):
            counts.accepted[turn.actor] += 1

    by_index = {t.index: t for t in turns}
    for coupling in couplings:
        for member_index in coupling.member_turn_indices[2:]:
            counts.elaborations[by_index[member_index].actor] += 1
    return counts


def _agent_busy_intervals(session: Session) -> list[tuple[int, int]]:
    """Spans where the agent is drawing: emission spans plus stroke spans."""
    intervals: list[tuple[int, int]] = []
    begin: Optional[int] = None
    for ev in session.events:
        if ev.kind is EventKind.AGENT_STROKE_BEGIN:
            begin = ev.t
        elif ev.kind is EventKind.AGENT_STROKE_END and begin is not None:
            intervals.append((begin, ev.t))
            begin = None
    if begin is not None:
        intervals.append((begin, session.duration_ms))
    for s in session.strokes():
        if s.actor is Actor.AGENT:
            intervals.append((s.t_start, s.t_end))
    return intervals


def turn_rhythm(session: Session, turns: Sequence[Turn]) -> list[TurnWindow]:
    """Per-turn decomposition of the user's time into draw/regulate/wait/pause.

    Each turn owns the window from its start to the next turn's start (the
    last turn runs to session end), so regulation right after an agent turn
    lands in that agent turn's window, matching how the rhythm reads.
    """
    if not turns:
        return []
    tick = session.config.tick_ms
    duration = session.duration_ms
    n = tick_count(duration, tick)

    draw = bytearray(n)
    regulate = bytearray(n)
    agent_busy = bytearray(n)

    def tick_of(t: int) -> int:
        return min(t // tick, n - 1)

    for ev in session.events:
        if ev.actor is Actor.USER and (
            ev.kind in COMMUNICATE_KINDS or ev.kind in MANIPULATE_KINDS
        ):
            regulate[tick_of(ev.t)] = 1
        elif ev.actor is Actor.USER and ev.kind in EXECUTE_KINDS:
            draw[tick_of(ev.t)] = 1
    for s in session.strokes():
        if s.actor is Actor.USER:
            for i in range(tick_of(s.t_start), tick_of(s.t_end) + 1):
                draw[i] = 1
    for lo, hi in _agent_busy_intervals(session):
        for i in range(tick_of(lo), tick_of(hi) + 1):
            agent_busy[i] = 1

    def label(i: int) -> RhythmKind:
        if regulate[i]:
            return RhythmKind.REGULATE
        if draw[i]:
            return RhythmKind.DRAW
        if agent_busy[i]:
            return RhythmKind.WAIT
        return RhythmKind.PAUSE

    windows: list[TurnWindow] = []
    for i, turn in enumerate(turns):
        w_start = turn.t_start
        w_end = turns[i + 1].t_start if i + 1 < len(turns) else max(duration, turn.t_end)
        segments: list[RhythmSegment] = []
        t = w_start
        while t < w_end:
            idx = tick_of(t)
            tick_end = min((idx + 1) * tick, w_end)
            span = tick_end - t
            kind = label(idx)
            if segments and segments[-1].kind is kind:
                segments[-1] = RhythmSegment(kind, segments[-1].duration_ms + span)
            else:
                segments.append(RhythmSegment(kind, span))
            t = tick_end
        windows.append(
            TurnWindow(
                turn_index=turn.index,
                actor=turn.actor,
                t_start=w_start,
                t_end=w_end,
                segments=tuple(segments),
            )
        )
    return windows


def session_metrics(
    session: Session, code_series_user: CodeSeries, code_series_agent: CodeSeries
) -> MetricTable:
    """Assemble the full per-session metric table."""
    turns = session.turns()
    couplings = detect_couplings(turns, session.config)
    collaboration = collaboration_dynamics(turns, couplings, session.events, session.config)
    strokes = session.strokes()

    def actor_metrics(actor: Actor, series: CodeSeries) -> ActorMetrics:
        counts = mode_counts(series)
        if len(series.values) >= 2:
            stats = curve_stats(csm_curve(series), series)
            slope, r_squared, mean_code = stats.slope, stats.r_squared, stats.mean_code
        else:
            slope, r_squared = 0.0, None
            mean_code = sum(series.values) / len(series.values) if series.values else 0.0
        own = [s for s in strokes if s.actor is actor]
        total_lines = len(own)
        total_length = sum(stroke_length(s) for s in own)
        turn_count = sum(1 for t in turns if t.actor is actor and t.counts_as_turn)
        lines_per_turn = total_lines / turn_count if turn_count else None
        avg_length_per_turn = total_length / turn_count if turn_count else None
        return ActorMetrics(
            communicate_count=counts[InteractionMode.COMMUNICATE],
            manipulate_count=counts[InteractionMode.MANIPULATE_INTERFACE],
            wait_count=counts[InteractionMode.WAIT],
            execute_count=counts[InteractionMode.EXECUTE],
            mean_code=mean_code,
            slope=slope,
            r_squared=r_squared,
            total_lines=total_lines,
            total_line_length=total_length,
            lines_per_turn=lines_per_turn,
            avg_line_length_per_turn=avg_length_per_turn,
            turn_count=turn_count,
        )

    return MetricTable(
        user=actor_metrics(Actor.USER, code_series_user),
        agent=actor_metrics(Actor.AGENT, code_series_agent),
        coupling_count=len(couplings),
        collaboration=collaboration,
    )


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    # Lentz's algorithm for the incomplete-beta continued fraction.
    max_iter, eps, tiny = 300, 3e-15, 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def t_two_sided_p(t: float, df: float) -> float:
    """Two-sided tail probability of Student's t."""
    if math.isinf(t):
        return 0.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))


def welch_t(a: Sequence[float], b: Sequence[float]) -> tuple[float, float, float]:
    """Welch's unequal-variance t statistic, Welch-Satterthwaite df, two-sided p.

    Two constant, equal groups give (0, pooled df, 1); constant groups with
    different means degenerate to an infinite statistic and p = 0.
    """
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise ValueError("each group needs at least 2 samples")
    mean_a = sum(a) / na
    mean_b = sum(b) / nb
    var_a = sum((x - mean_a) ** 2 for x in a) / (na - 1)
    var_b = sum((x - mean_b) ** 2 for x in b) / (nb - 1)
    se_sq = var_a / na + var_b / nb
    if se_sq == 0.0:
        if mean_a == mean_b:
            return 0.0, float(na + nb - 2), 1.0
        t = math.inf if mean_a > mean_b else -math.inf
        return t, float(na + nb - 2), 0.0
    t = (mean_a - mean_b) / math.sqrt(se_sq)
    df = se_sq**2 / ((var_a / na) ** 2 / (na - 1) + (var_b / nb) ** 2 / (nb - 1))
    return t, df, t_two_sided_p(t, df)


def _flatten_tables(group: Sequence) -> list[dict[str, Optional[float]]]:
    return [m.flatten() if isinstance(m, MetricTable) else dict(m) for m in group]


def compare_groups(
    group_a: Sequence[MetricTable], group_b: Sequence[MetricTable], alpha: float = 0.05
) -> GroupComparison:
    """Per-metric Welch comparison; undefined metrics are excluded with a notice.

    Accepts MetricTable objects or already-flattened metric mappings.
    """
    if not group_a or not group_b:
        raise ValueError("both groups must be non-empty")
    if len(group_a) < 2 or len(group_b) < 2:
        raise ValueError("each group needs at least 2 sessions for a t-test")
    flat_a = _flatten_tables(group_a)
    flat_b = _flatten_tables(group_b)
    metrics: dict[str, MetricComparison] = {}
    excluded: dict[str, str] = {}
    for name in flat_a[0]:
        values_a = [f[name] for f in flat_a]
        values_b = [f[name] for f in flat_b]
        undefined = sum(1 for v in values_a + values_b if v is None)
        if undefined:
            excluded[name] = f"undefined in {undefined} session(s)"
            continue
        t, df, p = welch_t(values_a, values_b)  # type: ignore[arg-type]
        metrics[name] = MetricComparison(
            mean_a=sum(values_a) / len(values_a),  # type: ignore[arg-type]
            mean_b=sum(values_b) / len(values_b),  # type: ignore[arg-type]
            t=t,
            df=df,
            p=p,
            significant=p < alpha,
        )
    return GroupComparison(
        alpha=alpha, n_a=len(group_a), n_b=len(group_b), metrics=metrics, excluded=excluded
    )


__all__ = [
    "ActorMetrics",
    "CollaborationCounts",
    "Coupling",
    "GroupComparison",
    "MetricComparison",
    "MetricTable",
    "RhythmKind",
    "RhythmSegment",
    "TurnWindow",
    "collaboration_dynamics",
    "compare_groups",
    "detect_couplings",
    "regularized_incomplete_beta",
    "session_metrics",
    "t_two_sided_p",
    "turn_rhythm",
    "welch_t",
]
