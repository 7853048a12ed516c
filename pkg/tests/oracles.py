"""Independent reference computations the test suite checks the package against.

These deliberately use different formulations than the implementations:
top-down memoized recursion and path enumeration instead of the iterative
Fréchet DP, textbook normal equations for the regression, and scipy for
the t-test reference.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import scipy.stats


def euclid(p: tuple[float, float], q: tuple[float, float]) -> float:
    # plain sqrt(dx^2 + dy^2): bit-identical to the vectorized distance grid,
    # so coupling-structure equality can be asserted exactly
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return math.sqrt(dx * dx + dy * dy)


def frechet_recursive(p: Sequence[tuple[float, float]], q: Sequence[tuple[float, float]]) -> float:
    """Discrete Fréchet via the textbook top-down recursion."""
    p = tuple(map(tuple, p))
    q = tuple(map(tuple, q))

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> float:
        d = euclid(p[i], q[j])
        if i == 0 and j == 0:
            return d
        if i == 0:
            return max(rec(0, j - 1), d)
        if j == 0:
            return max(rec(i - 1, 0), d)
        return max(min(rec(i - 1, j), rec(i - 1, j - 1), rec(i, j - 1)), d)

    return rec(len(p) - 1, len(q) - 1)


def frechet_paths(p: Sequence[tuple[float, float]], q: Sequence[tuple[float, float]]) -> float:
    """Exhaustive minimum over every monotone coupling; only for tiny inputs."""
    n, m = len(p), len(q)
    best = math.inf

    def walk(i: int, j: int, worst: float) -> None:
        nonlocal best
        worst = max(worst, euclid(tuple(p[i]), tuple(q[j])))
        if worst >= best:
            return
        if i == n - 1 and j == m - 1:
            best = min(best, worst)
            return
        if i + 1 < n:
            walk(i + 1, j, worst)
        if j + 1 < m:
            walk(i, j + 1, worst)
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, worst)

    walk(0, 0, 0.0)
    return best


def ema_recurrence(series: Sequence[float], period: int) -> list[float]:
    """Plain recurrence evaluation, seeded on the first sample."""
    alpha = 2.0 / (period + 1.0)
    out = []
    for i, x in enumerate(series):
        if i == 0:
            out.append(float(x))
        else:
            out.append(alpha * float(x) + (1.0 - alpha) * out[-1])
    return out


def macd_recurrence(
    series: Sequence[float], fast: int, slow: int, signal: int
) -> tuple[list[float], list[float], list[float]]:
    fast_line = ema_recurrence(series, fast)
    slow_line = ema_recurrence(series, slow)
    macd_line = [a - b for a, b in zip(fast_line, slow_line)]
    signal_line = ema_recurrence(macd_line, signal)
    histogram = [a - b for a, b in zip(macd_line, signal_line)]
    return macd_line, signal_line, histogram


def ols_normal_equations(ys: Sequence[float]) -> tuple[float, float, float]:
    """(slope, intercept, r_squared) of y against 0..n-1 via sum formulas."""
    n = len(ys)
    xs = range(n)
    sum_x = sum(xs)
    sum_y = sum(ys)
    sum_xy = sum(x * y for x, y in zip(xs, ys))
    sum_xx = sum(x * x for x in xs)
    sum_yy = sum(y * y for y in ys)
    slope = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x**2)
    intercept = (sum_y - slope * sum_x) / n
    sxy = sum_xy - sum_x * sum_y / n
    sxx = sum_xx - sum_x**2 / n
    syy = sum_yy - sum_y**2 / n
    r_squared = (sxy * sxy) / (sxx * syy)
    return slope, intercept, r_squared


def welch_reference(a: Sequence[float], b: Sequence[float]) -> tuple[float, float, float]:
    """(t, df, p) from scipy plus the Welch-Satterthwaite formula."""
    result = scipy.stats.ttest_ind(list(a), list(b), equal_var=False)
    na, nb = len(a), len(b)
    va = scipy.stats.tvar(list(a))
    vb = scipy.stats.tvar(list(b))
    se_a, se_b = va / na, vb / nb
    df = (se_a + se_b) ** 2 / (se_a**2 / (na - 1) + se_b**2 / (nb - 1))
    return float(result.statistic), float(df), float(result.pvalue)
