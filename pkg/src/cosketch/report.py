"""Self-contained analysis report for one session.

The report embeds the config and seed, so group comparisons and dashboards
never need the raw log again. Building it is the single analysis code path
shared by the CLI and the service.
"""

from __future__ import annotations

import json
import math
from typing import Any, Optional

from .analytics import (
    collaboration_dynamics,
    compare_groups,
    detect_couplings,
    session_metrics,
    turn_rhythm,
)
from .coding import CodeSeries, code_timeline, csm_curve, curve_stats, mode_counts
from .model import Actor, InteractionMode, Session
from .trend import classify, macd, phase_frequencies, run_lengths

REPORT_VERSION = "ccsm-report/1"

_MODE_NAMES = {
    InteractionMode.COMMUNICATE: "communicate",
    InteractionMode.MANIPULATE_INTERFACE: "manipulate",
    InteractionMode.WAIT: "wait",
    InteractionMode.EXECUTE: "execute",
}


def _actor_section(session: Session, series: CodeSeries) -> dict[str, Any]:
    counts = mode_counts(series)
    section: dict[str, Any] = {
        "codes": list(series.values),
        "counts": {_MODE_NAMES[m]: counts[m] for m in InteractionMode},
    }
    if len(series.values) >= 1:
        curve = csm_curve(series)
        section["curve"] = list(curve.values)
        if len(curve.values) >= 2:
            stats = curve_stats(curve, series)
            section.update(
                slope=stats.slope,
                intercept=stats.intercept,
                r_squared=stats.r_squared,
                mean_code=stats.mean_code,
            )
        else:
            section.update(slope=None, intercept=None, r_squared=None, mean_code=series.values[0])
        cfg = session.config
        trend = classify(
            macd(curve.values, cfg.macd_fast, cfg.macd_slow, cfg.macd_signal), cfg.hold_epsilon
        )
        segments = run_lengths(trend)
        section["trend_segments"] = [
            [seg.label.value, seg.start_tick, seg.length_ticks] for seg in segments
        ]
        section["phase_frequencies"] = [
            {label.value: phase[label] for label in phase} for phase in phase_frequencies(segments)
        ]
    else:
        section.update(
            curve=[], slope=None, intercept=None, r_squared=None, mean_code=None,
            trend_segments=[], phase_frequencies=[],
        )
    return section


def build_report(session: Session) -> dict[str, Any]:
    """Compute the full metric/trend/coupling report for a session."""
    turns = session.turns()
    series = {
        actor: code_timeline(session.events, turns, session.config, actor) for actor in Actor
    }
    couplings = detect_couplings(turns, session.config)
    collaboration = collaboration_dynamics(turns, couplings, session.events, session.config)
    table = session_metrics(session, series[Actor.USER], series[Actor.AGENT])
    rhythm = turn_rhythm(session, turns)

    return {
        "format": REPORT_VERSION,
        "session": {
            "id": session.id,
            "group": session.group_label,
            "seed": session.rng_seed,
            "config": session.config.to_dict(),
        },
        "duration_ms": session.duration_ms,
        "tick_ms": session.config.tick_ms,
        "actors": {
            Actor.USER.value: _actor_section(session, series[Actor.USER]),
            Actor.AGENT.value: _actor_section(session, series[Actor.AGENT]),
        },
        "metrics": table.flatten(),
        "couplings": [
            {
                "depth": c.depth,
                "duration_ms": c.duration_ms,
                "initiator": c.initiator.value,
                "decoupler": c.decoupler.value,
                "member_turn_indices": list(c.member_turn_indices),
            }
            for c in couplings
        ],
        "collaboration": {
            "new_ideas": {a.value: collaboration.new_ideas[a] for a in Actor},
            "accepted": {a.value: collaboration.accepted[a] for a in Actor},
            "rejected": {a.value: collaboration.rejected[a] for a in Actor},
            "elaborations": {a.value: collaboration.elaborations[a] for a in Actor},
            "objects_requested": collaboration.objects_requested,
        },
        "turns": [
            {
                "index": t.index,
                "actor": t.actor.value,
                "t_start": t.t_start,
                "t_end": t.t_end,
                "counts_as_turn": t.counts_as_turn,
                "stroke_count": len(t.strokes),
                "algorithm": t.source_algorithm,
            }
            for t in turns
        ],
        "rhythm": [
            {
                "turn_index": w.turn_index,
                "actor": w.actor.value,
                "t_start": w.t_start,
                "t_end": w.t_end,
                "segments": [[s.kind.value, s.duration_ms] for s in w.segments],
            }
            for w in rhythm
        ],
    }


def serialize_report(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def comparison_to_dict(
    reports_a: list[dict[str, Any]],
    reports_b: list[dict[str, Any]],
    alpha: float = 0.05,
    label_a: Optional[str] = None,
    label_b: Optional[str] = None,
) -> dict[str, Any]:
    """Two-group comparison straight from report documents."""
    comparison = compare_groups(
        [r["metrics"] for r in reports_a],  # type: ignore[arg-type]
        [r["metrics"] for r in reports_b],  # type: ignore[arg-type]
        alpha=alpha,
    )
    return {
        "format": "ccsm-compare/1",
        "alpha": comparison.alpha,
        "group_a": {"label": label_a, "n": comparison.n_a},
        "group_b": {"label": label_b, "n": comparison.n_b},
        "metrics": {
            name: {
                "mean_a": m.mean_a,
                "mean_b": m.mean_b,
                # infinite t (constant unequal groups) is not valid JSON
                "t": m.t if math.isfinite(m.t) else None,
                "df": m.df,
                "p": m.p,
                "significant": m.significant,
            }
            for name, m in sorted(comparison.metrics.items())
        },
        "excluded": dict(sorted(comparison.excluded.items())),
    }


__all__ = ["REPORT_VERSION", "build_report", "comparison_to_dict", "serialize_report"]
