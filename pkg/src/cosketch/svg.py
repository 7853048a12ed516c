"""Deterministic SVG emitters for the curve, trend, and rhythm views.

Hand-rolled markup, no plotting stack: the outputs are pure functions of
their inputs and byte-identical across calls, which the round-trip and
determinism checks rely on.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

TREND_COLORS = {
    "execute": "#d62728",  # red
    "regulate": "#2ca02c",  # green
    "wait": "#ffd700",  # yellow
}

RHYTHM_COLORS = {
    "draw": "#d62728",
    "regulate": "#2ca02c",
    "wait": "#ffd700",
    "pause": "#bdbdbd",
}


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_curve_svg(
    curve: Sequence[float],
    overlay: Optional[Sequence[tuple[int, str]]] = None,
    width: int = 720,
    height: int = 260,
) -> str:
    """Polyline of the cumulative curve with axis ticks and optional
    action-history markers at (tick, label) positions."""
    if not curve:
        raise ValueError("empty curve")
    margin = 36
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    lo = min(min(curve), 0.0)
    hi = max(max(curve), 0.0)
    span = (hi - lo) or 1.0
    n = len(curve)

    def sx(i: int) -> float:
        return margin + (plot_w * i / max(n - 1, 1))

    def sy(v: float) -> float:
        return margin + plot_h * (1 - (v - lo) / span)

    pts = " ".join(f"{_fmt(sx(i))},{_fmt(sy(v))}" for i, v in enumerate(curve))
    body = [
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<line x1="{margin}" y1="{_fmt(sy(0.0))}" x2="{width - margin}" '
        f'y2="{_fmt(sy(0.0))}" stroke="#888888" stroke-width="1"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="#888888" stroke-width="1"/>',
    ]
    for k in range(5):
        i = (n - 1) * k // 4 if n > 1 else 0
        x = _fmt(sx(i))
        body.append(
            f'<line x1="{x}" y1="{height - margin}" x2="{x}" y2="{height - margin + 4}" '
            f'stroke="#888888" stroke-width="1"/>'
        )
        body.append(
            f'<text x="{x}" y="{height - margin + 16}" font-size="10" '
            f'text-anchor="middle" fill="#444444">{i}</text>'
        )
    for value in (lo, hi):
        y = _fmt(sy(value))
        body.append(
            f'<text x="{margin - 4}" y="{y}" font-size="10" text-anchor="end" '
            f'fill="#444444">{_fmt(value)}</text>'
        )
    body.append(
        f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    if overlay:
        body.append('<g class="overlay">')
        for tick, label in overlay:
            i = min(max(tick, 0), n - 1)
            x, y = _fmt(sx(i)), _fmt(sy(curve[i]))
            body.append(
                f'<circle cx="{x}" cy="{y}" r="3" fill="#ff7f0e" class="marker"/>'
            )
            body.append(
                f'<text x="{x}" y="{_fmt(sy(curve[i]) - 6)}" font-size="8" '
                f'text-anchor="middle" fill="#ff7f0e">{label}</text>'
            )
        body.append("</g>")
    return _svg(width, height, body)


def render_trends_svg(
    segments: Sequence[Any], width: int = 720, height: int = 64
) -> str:
    """One colored rectangle per trend segment, width proportional to length.

    Accepts TrendSegment objects or [label, start, length] triples.
    """
    rows = []
    for seg in segments:
        if isinstance(seg, (list, tuple)):
            label, start, length = seg[0], int(seg[1]), int(seg[2])
            label = getattr(label, "value", label)
        else:
            label, start, length = seg.label.value, seg.start_tick, seg.length_ticks
        rows.append((str(label), start, length))
    total = sum(length for _, _, length in rows)
    body = ['<g class="trends">']
    if total > 0:
        for label, start, length in rows:
            x = width * start / total
            w = width * length / total
            color = TREND_COLORS.get(label, "#999999")
            body.append(
                f'<rect x="{_fmt(x)}" y="0" width="{_fmt(w)}" height="{height}" '
                f'fill="{color}" class="{label}"/>'
            )
    body.append("</g>")
    return _svg(width, height, body)


def render_rhythm_svg(
    rhythm: Sequence[dict[str, Any]], width: int = 720, bar_height: int = 16, gap: int = 6
) -> str:
    """Stacked per-turn bars; sub-segments in temporal order, length to scale.

    Takes the report's rhythm entries: {"turn_index", "actor", "segments":
    [[kind, duration_ms], ...]}.
    """
    label_w = 64
    plot_w = width - label_w - 8
    durations = [sum(d for _, d in entry["segments"]) for entry in rhythm] or [1]
    max_ms = max(max(durations), 1)
    height = max(len(rhythm) * (bar_height + gap) + gap, bar_height + 2 * gap)
    body = [f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>']
    for row, entry in enumerate(rhythm):
        y = gap + row * (bar_height + gap)
        body.append(
            f'<text x="4" y="{y + bar_height - 4}" font-size="10" fill="#444444">'
            f'{entry["turn_index"]} {entry["actor"]}</text>'
        )
        x = float(label_w)
        for kind, duration in entry["segments"]:
            kind = getattr(kind, "value", kind)
            w = plot_w * duration / max_ms
            color = RHYTHM_COLORS.get(str(kind), "#999999")
            body.append(
                f'<rect x="{_fmt(x)}" y="{y}" width="{_fmt(w)}" height="{bar_height}" '
                f'fill="{color}" class="{kind}"/>'
            )
            x += w
    return _svg(width, height, body)


__all__ = ["RHYTHM_COLORS", "TREND_COLORS", "render_curve_svg", "render_rhythm_svg", "render_trends_svg"]
