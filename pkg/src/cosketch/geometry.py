"""Stroke geometry kernel: Fréchet similarity, normalization, transforms.

All functions are pure; randomness is confined to apply_transform and always
flows from an explicit seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .model import Point, Stroke


@dataclass(frozen=True, slots=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if self.w < 0 or self.h < 0:
            raise ValueError("rect with negative extent")

    @property
    def diagonal(self) -> float:
        return math.hypot(self.w, self.h)

    def intersects(self, other: "Rect") -> bool:
        """True when the overlap has positive area (edge contact is free)."""
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )


@dataclass(frozen=True, slots=True)
class TransformSpec:
    translate: tuple[float, float] = (0.0, 0.0)
    rotate_deg: float = 0.0
    scale: float = 1.0
    noise_amplitude: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _as_array(points: Sequence[Point]) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float)


def discrete_frechet(p: Sequence[Point], q: Sequence[Point]) -> float:
    """Discrete Fréchet distance between two polylines (Eiter-Mannila DP).

    Exact on the sampled points: the minimum over all monotone couplings of
    the maximum pairwise distance. Symmetric, and 0 iff the sequences match.
    """
    if not p or not q:
        raise ValueError("polylines must be non-empty")
    a, b = _as_array(p), _as_array(q)
    diff = a[:, None, :] - b[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    n, m = dist.shape
    dp = np.empty((n, m))
    dp[0, 0] = dist[0, 0]
    for i in range(1, n):
        dp[i, 0] = max(dp[i - 1, 0], dist[i, 0])
    for j in range(1, m):
        dp[0, j] = max(dp[0, j - 1], dist[0, j])
    for i in range(1, n):
        for j in range(1, m):
            dp[i, j] = max(min(dp[i - 1, j], dp[i - 1, j - 1], dp[i, j - 1]), dist[i, j])
    return float(dp[n - 1, m - 1])


def polyline_length(points: Sequence[Point]) -> float:
    """Sum of consecutive segment lengths; 0 for a single point."""
    if not points:
        raise ValueError("polyline must be non-empty")
    if len(points) == 1:
        return 0.0
    a = _as_array(points)
    return float(np.sqrt(((a[1:] - a[:-1]) ** 2).sum(axis=1)).sum())


def stroke_length(stroke: Stroke) -> float:
    return polyline_length(stroke.points)


def bounding_box(strokes: Sequence[Stroke]) -> Rect:
    """Minimal axis-aligned rectangle covering every point of every stroke."""
    pts = [p for s in strokes for p in s.points]
    return bounding_box_points(pts)


def bounding_box_points(points: Sequence[Point]) -> Rect:
    if not points:
        raise ValueError("no points to bound")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return Rect(min(xs), min(ys), max(xs) - min(xs), max(ys) - min(ys))


def centroid(points: Sequence[Point]) -> Point:
    a = _as_array(points)
    cx, cy = a.mean(axis=0)
    return Point(float(cx), float(cy))


def resample_points(points: Sequence[Point], n_points: int) -> list[Point]:
    """Arc-length uniform resampling to exactly n_points."""
    if n_points < 2:
        raise ValueError("need at least 2 sample points")
    if not points:
        raise ValueError("polyline must be non-empty")
    a = _as_array(points)
    if len(a) == 1:
        return [Point(float(a[0, 0]), float(a[0, 1]))] * n_points
    seg = np.sqrt(((a[1:] - a[:-1]) ** 2).sum(axis=1))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total == 0.0:
        return [Point(float(a[0, 0]), float(a[0, 1]))] * n_points
    targets = np.linspace(0.0, total, n_points)
    xs = np.interp(targets, cum, a[:, 0])
    ys = np.interp(targets, cum, a[:, 1])
    return [Point(float(x), float(y)) for x, y in zip(xs, ys)]


def resample_normalize(points: Sequence[Point], n_points: int = 32) -> list[Point]:
    """Resample, move the centroid to the origin, scale bbox diagonal to 1.

    Gives translation and scale invariance for exemplar matching. A
    degenerate (zero-length) stroke collapses to n copies of the origin.
    """
    resampled = resample_points(points, n_points)
    a = _as_array(resampled)
    a -= a.mean(axis=0)
    extent = a.max(axis=0) - a.min(axis=0)
    diag = math.hypot(float(extent[0]), float(extent[1]))
    if diag == 0.0:
        return [Point(0.0, 0.0)] * n_points
    a /= diag
    return [Point(float(x), float(y)) for x, y in a]


def transform_points(
    points: Sequence[Point],
    spec: TransformSpec,
    about: Optional[Point] = None,
    rng: Optional[random.Random] = None,
) -> list[Point]:
    """Rotate about the centroid, scale about it, translate, then jitter.

    The jitter is uniform in [-a, a] per coordinate from the seeded rng, so
    the same spec always yields the same output.
    """
    a = _as_array(points)
    pivot = np.array([about.x, about.y]) if about else a.mean(axis=0)
    theta = math.radians(spec.rotate_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    rot = np.array([[cos_t, -sin_t], [sin_t, cos_t]])
    a = (a - pivot) @ rot.T * spec.scale + pivot
    a += np.array(spec.translate)
    if spec.noise_amplitude > 0:
        r = rng or random.Random(spec.rng_seed)
        amp = spec.noise_amplitude
        jitter = np.array([(r.uniform(-amp, amp), r.uniform(-amp, amp)) for _ in range(len(a))])
        a += jitter
    return [Point(float(x), float(y)) for x, y in a]


def apply_transform(stroke: Stroke, spec: TransformSpec) -> Stroke:
    pts = transform_points(stroke.points, spec)
    return Stroke(
        points=tuple(pts),
        actor=stroke.actor,
        t_start=stroke.t_start,
        t_end=stroke.t_end,
        width=stroke.width,
        color=stroke.color,
    )


def translate_points(points: Sequence[Point], dx: float, dy: float) -> list[Point]:
    return [Point(p.x + dx, p.y + dy) for p in points]


def scale_points(points: Sequence[Point], factor: float, about: Point) -> list[Point]:
    return [Point(about.x + (p.x - about.x) * factor, about.y + (p.y - about.y) * factor) for p in points]


def min_point_distance(p: Sequence[Point], q: Sequence[Point]) -> float:
    """Smallest Euclidean distance between any point of p and any of q."""
    if not p or not q:
        raise ValueError("polylines must be non-empty")
    a, b = _as_array(p), _as_array(q)
    diff = a[:, None, :] - b[None, :, :]
    return float(np.sqrt((diff * diff).sum(axis=2)).min())


def find_open_space(
    occupied: Sequence[Rect], canvas: Rect, desired: tuple[float, float]
) -> Optional[Point]:
    """Top-left of the first free grid cell, scanning row-major.

    The grid cell matches the desired size with a half-cell stride;
    reproducible placement is preferred over aesthetics.
    """
    w, h = desired
    if w > canvas.w or h > canvas.h:
        raise ValueError("desired area larger than canvas")
    step_x = max(w / 2.0, 1.0)
    step_y = max(h / 2.0, 1.0)
    y = canvas.y
    while y + h <= canvas.y + canvas.h + 1e-9:
        x = canvas.x
        while x + w <= canvas.x + canvas.w + 1e-9:
            cell = Rect(x, y, w, h)
            if not any(cell.intersects(r) for r in occupied):
                return Point(x, y)
            x += step_x
        y += step_y
    return None


__all__ = [
    "Rect",
    "TransformSpec",
    "apply_transform",
    "bounding_box",
    "bounding_box_points",
    "centroid",
    "discrete_frechet",
    "find_open_space",
    "min_point_distance",
    "polyline_length",
    "resample_normalize",
    "resample_points",
    "scale_points",
    "stroke_length",
    "transform_points",
    "translate_points",
]
