"""Power-law classification of pairwise correlations.

The cumulative Manhattan distance between two series is fitted as a power
law of the series length on a log-log scale. The fitted exponent minus one
is the correlation class ``gamma``:

* ``gamma < 0``: the series converge,
* ``gamma == 0``: constant gap (linear correlation with offset),
* ``gamma == 1``: linearly diverging gap,
* ``gamma > 1``: strongly diverging.

``beta`` is the two-sided p-value of the log-log slope against zero slope;
small ``beta`` means the power-law growth (and so the class) is stable over
the window. Logs are natural; the slope and ``beta`` do not depend on the
base, the intercept is in natural-log units.

``|a_i - b_i|`` is used unconditionally. If ``a - b`` changes sign inside
the window the cumulative distance no longer tracks the area between the
curves one-sidedly, which blurs the reading of ``gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.special import betainc

from .errors import ContractError, DegenerateSeriesError
from .ingest import SeriesPanel
from .matrix import Degenerate, PairMatrix, PairResult

MIN_FIT_POINTS = 3
DEFAULT_TAIL = 10
DEFAULT_MIN_MD = 1e-12


@dataclass(frozen=True)
class PlcsConfig:
    tail_points: Union[int, str] = DEFAULT_TAIL
    min_md: float = DEFAULT_MIN_MD

    def __post_init__(self):
        if isinstance(self.tail_points, str):
            if self.tail_points != "all":
                raise ContractError(f"tail_points must be an integer or 'all', got {self.tail_points!r}")
        elif int(self.tail_points) != self.tail_points or self.tail_points < MIN_FIT_POINTS:
            raise ContractError(f"tail_points must be >= {MIN_FIT_POINTS}, got {self.tail_points}")
        if not self.min_md > 0:
            raise ContractError(f"min_md must be positive, got {self.min_md}")

    @classmethod
    def from_tail(cls, tail: Union[int, str, None], min_md: float = DEFAULT_MIN_MD) -> "PlcsConfig":
        if tail is None:
            return cls(min_md=min_md)
        if isinstance(tail, str) and tail != "all":
            try:
                tail = int(tail)
            except ValueError:
                raise ContractError(f"tail must be an integer or 'all', got {tail!r}") from None
        return cls(tail_points=tail, min_md=min_md)


@dataclass(frozen=True)
class FitResult:
    alpha: float
    gamma: float
    beta: float
    intercept: float
    r_squared: float
    tail_points: int
    t_stat: float
    stderr: float

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "beta": self.beta,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "tail_points": self.tail_points,
            "t_stat": self.t_stat,
            "stderr": self.stderr,
        }


@dataclass(frozen=True)
class LogLogPoints:
    """Tail of the log-log curve.

    ``excess`` is ``ln(M(j) / j)``, i.e. ``y - x`` evaluated without the
    cancellation of subtracting two logs. Fitting it against ``x`` gives
    ``gamma`` directly, and exactly zero for a constant gap.
    """

    j: np.ndarray
    x: np.ndarray
    y: np.ndarray
    excess: np.ndarray

    def __len__(self) -> int:
        return len(self.x)

    def __iter__(self):
        return iter(zip(self.x.tolist(), self.y.tolist()))


def cumulative_md(a: Sequence[float], b: Sequence[float]) -> np.ndarray:
    """Running sum ``M(j) = sum_{i<=j} |a_i - b_i|``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1:
        raise ContractError("series must be one-dimensional")
    if a.shape != b.shape:
        raise ContractError(f"series lengths differ: {a.size} vs {b.size}")
    if a.size == 0:
        raise ContractError("series are empty")
    return np.cumsum(np.abs(a - b))


def loglog_points(m: Sequence[float], cfg: PlcsConfig = PlcsConfig()) -> LogLogPoints:
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        raise ContractError("cumulative distance is empty")
    j = np.arange(1, m.size + 1)
    usable = m > cfg.min_md
    j, m = j[usable], m[usable]
    if cfg.tail_points != "all":
        j, m = j[-cfg.tail_points:], m[-cfg.tail_points:]
    if j.size < MIN_FIT_POINTS:
        raise DegenerateSeriesError(
            f"only {j.size} points with cumulative distance above {cfg.min_md:g}; "
            "series are (near-)identical"
        )
    x = np.log(j.astype(float))
    return LogLogPoints(j=j, x=x, y=np.log(m), excess=np.log(m / j))


def student_t_two_sided(t: float, df: int) -> float:
    """Two-sided tail probability ``P(|T| >= |t|)`` for Student's t."""
    if df <= 0:
        raise ContractError(f"degrees of freedom must be positive, got {df}")
    if math.isinf(t):
        return 0.0
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return min(max(p, 0.0), 1.0)


def fit_power_law(points: Union[LogLogPoints, Iterable[tuple[float, float]]]) -> FitResult:
    """Least-squares line through log-log points.

    Accepts :class:`LogLogPoints` or plain ``(x, y)`` pairs.
    """
    if isinstance(points, LogLogPoints):
        x, y, excess = points.x, points.y, points.excess
    else:
        pts = np.asarray(list(points), dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ContractError("points must be (x, y) pairs")
        x, y = pts[:, 0], pts[:, 1]
        excess = y - x
    n = x.size
    if n < MIN_FIT_POINTS:
        raise ContractError(f"need at least {MIN_FIT_POINTS} points, got {n}")

    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ContractError("all x values are identical")
    # shift by the first value so a constant excess centres to exact zeros
    shifted = excess - excess[0]
    de = shifted - shifted.mean()
    gamma = float(dx @ de) / sxx
    alpha = gamma + 1.0
    intercept = float(excess[0] + shifted.mean() - gamma * x.mean())

    resid = de - gamma * dx
    ssr = float(resid @ resid)
    dy = y - y.mean()
    syy = float(dy @ dy)

    if ssr == 0.0:
        return FitResult(alpha, gamma, 0.0, intercept, 1.0, n, math.inf, 0.0)

    df = n - 2
    stderr = math.sqrt(ssr / df / sxx)
    t = alpha / stderr
    r_squared = 1.0 - ssr / syy if syy > 0 else 0.0
    return FitResult(
        alpha=alpha,
        gamma=gamma,
        beta=student_t_two_sided(t, df),
        intercept=intercept,
        r_squared=min(max(r_squared, 0.0), 1.0),
        tail_points=n,
        t_stat=t,
        stderr=stderr,
    )


def plcs_pair(a: Sequence[float], b: Sequence[float], cfg: PlcsConfig = PlcsConfig()) -> FitResult:
    return fit_power_law(loglog_points(cumulative_md(a, b), cfg))


def plcs_matrix(panel: SeriesPanel, cfg: PlcsConfig = PlcsConfig()) -> PairMatrix:
    """Fit every unordered pair; pairs that cannot be fitted are marked."""
    if len(panel.entities) < 2:
        raise ContractError("panel needs at least 2 entities")
    results = []
    for u, v in combinations(panel.entities, 2):
        try:
            fit = plcs_pair(panel.series(u), panel.series(v), cfg)
        except DegenerateSeriesError as exc:
            fit = Degenerate(str(exc))
        results.append(PairResult(u, v, fit=fit))
    return PairMatrix(panel.entities, results)
