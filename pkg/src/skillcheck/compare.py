"""Moment matching and CDF-distance tooling.

Quantifies how well the uniform, normal and dice-sum chance curves
approximate a logistic one: match means and variances, then measure the
largest absolute gap between cumulative distributions over a dense grid
(a Kolmogorov-style sup distance).

Moments of exact dice distributions are computed in rational arithmetic
and converted to float only when the matched parameters are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Union

from .dice import DiscreteDist, convolve, die
from .logistic import logistic_cdf, normal_cdf, uniform_cdf

__all__ = [
    "LogisticParams",
    "ComparisonReport",
    "moment_match_logistic",
    "match_uniform_to_logistic",
    "match_normal_to_logistic",
    "sup_distance",
    "discrete_vs_logistic",
    "normal_vs_logistic",
    "uniform_vs_logistic",
    "figure_data",
    "FIGURE_IDS",
]

CdfLike = Union[Callable[[float], float], DiscreteDist]


@dataclass(frozen=True)
class LogisticParams:
    """Location and scale of a logistic distribution (variance s^2 * pi^2 / 3)."""

    mean: float
    scale: float

    def __post_init__(self) -> None:
        if not self.scale > 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @property
    def variance(self) -> float:
        return self.scale**2 * math.pi**2 / 3.0

    @property
    def sd(self) -> float:
        return self.scale * math.pi / math.sqrt(3.0)

    def cdf(self, t: float) -> float:
        return logistic_cdf(t, self.mean, self.scale)


@dataclass(frozen=True)
class ComparisonReport:
    """Two CDFs evaluated over a common grid, plus their sup distance."""

    grid: tuple[float, ...]
    cdf_a: tuple[float, ...]
    cdf_b: tuple[float, ...]
    sup_distance: float
    argmax_point: float


def moment_match_logistic(d: DiscreteDist) -> LogisticParams:
    """Logistic parameters with the same mean and variance as ``d``.

    A single-point distribution has zero variance and no logistic match.
    """
    if len(d.support) < 2:
        raise ValueError("cannot match a logistic to a single-point distribution")
    mean = float(d.mean())
    var = float(d.variance())
    return LogisticParams(mean=mean, scale=math.sqrt(3.0 * var) / math.pi)


def match_uniform_to_logistic(lp: LogisticParams) -> tuple[float, float]:
    """(mean, halfwidth) of the uniform with the same mean and variance.

    halfwidth = sqrt(3 * variance), which reduces to scale * pi.
    """
    return lp.mean, math.sqrt(3.0 * lp.variance)


def match_normal_to_logistic(lp: LogisticParams) -> tuple[float, float]:
    """(mean, sd) of the normal with the same mean and variance."""
    return lp.mean, math.sqrt(lp.variance)


def _as_cdf(c: CdfLike) -> Callable[[float], float]:
    if isinstance(c, DiscreteDist):
        return lambda x: float(c.cdf(x))
    return c


def _jump_points(d: DiscreteDist, lo: float, hi: float) -> list[float]:
    # Step CDFs are constant between jumps, so evaluating at each support
    # point and at midpoints between consecutive ones captures both
    # one-sided limits at every jump.
    pts = [float(k) for k in d.support]
    pts.append(d.support[0] - 0.5)
    pts.extend((a + b) / 2.0 for a, b in zip(d.support, d.support[1:]))
    return [p for p in pts if lo <= p <= hi]


def sup_distance(
    cdf_a: CdfLike,
    cdf_b: CdfLike,
    lo: float,
    hi: float,
    step: float,
) -> ComparisonReport:
    """Largest absolute CDF gap over an evenly spaced grid on [lo, hi].

    Arguments may be CDF callables or exact ``DiscreteDist`` values; for a
    discrete operand the grid is augmented so both one-sided limits at
    every jump are evaluated exactly.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    if not step > 0.0:
        raise ValueError(f"step must be positive, got {step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    points = [lo + i * step for i in range(count)]
    for c in (cdf_a, cdf_b):
        if isinstance(c, DiscreteDist):
            points.extend(_jump_points(c, lo, hi))
    grid = tuple(sorted(set(points)))
    if not grid:
        raise ValueError("empty evaluation grid")

    fa, fb = _as_cdf(cdf_a), _as_cdf(cdf_b)
    va = tuple(fa(x) for x in grid)
    vb = tuple(fb(x) for x in grid)
    sup = 0.0
    argmax = grid[0]
    for x, a, b in zip(grid, va, vb):
        gap = abs(a - b)
        if gap > sup:
            sup = gap
            argmax = x
    return ComparisonReport(grid=grid, cdf_a=va, cdf_b=vb, sup_distance=sup, argmax_point=argmax)


def discrete_vs_logistic(d: DiscreteDist) -> ComparisonReport:
    """Compare a dice distribution's step CDF to its moment-matched logistic.

    Both are evaluated at half-integer points k + 0.5 (the continuity
    adjustment for integer outcomes), from just below the support to just
    above it. cdf_a holds the step CDF, cdf_b the logistic.
    """
    lp = moment_match_logistic(d)
    grid = tuple(k + 0.5 for k in range(d.support[0] - 1, d.support[-1] + 1))
    va = tuple(float(d.cdf(x)) for x in grid)
    vb = tuple(lp.cdf(x) for x in grid)
    sup = 0.0
    argmax = grid[0]
    for x, a, b in zip(grid, va, vb):
        gap = abs(a - b)
        if gap > sup:
            sup = gap
            argmax = x
    return ComparisonReport(grid=grid, cdf_a=va, cdf_b=vb, sup_distance=sup, argmax_point=argmax)


def _default_grid(lp: LogisticParams) -> tuple[float, float, float]:
    # 1201 points spanning mean +/- 6 sd: stable to ~1e-4 in the reported
    # supremum, cheap enough for tests.
    sd = lp.sd
    lo, hi = lp.mean - 6.0 * sd, lp.mean + 6.0 * sd
    return lo, hi, (hi - lo) / 1200.0


def normal_vs_logistic(lp: LogisticParams) -> ComparisonReport:
    """Variance-matched normal against the logistic, on the default grid."""
    mean, sd = match_normal_to_logistic(lp)
    lo, hi, step = _default_grid(lp)
    return sup_distance(lambda t: normal_cdf(t, mean, sd), lp.cdf, lo, hi, step)


def uniform_vs_logistic(lp: LogisticParams) -> ComparisonReport:
    """Variance-matched uniform against the logistic, on the default grid."""
    mean, hw = match_uniform_to_logistic(lp)
    lo, hi, step = _default_grid(lp)
    return sup_distance(lambda t: uniform_cdf(t, mean, hw), lp.cdf, lo, hi, step)


FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5")

# The reference chance curves plotted over modifiers -100..100 share one
# variance: that of a uniform spanning +/-50 percentage points around an
# even-odds base chance.
_FIG_HALFWIDTH = 50.0
_FIG_SCALE = _FIG_HALFWIDTH / math.pi
_FIG_SD = _FIG_HALFWIDTH / math.sqrt(3.0)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fig2() -> str:
    # Linear easy-vs-hard success mapping with the two guide polylines
    # marking each person's (easy %, hard %) operating point.
    rows = [
        ("mapping", 25, 0),
        ("mapping", 100, 75),
        ("person_a_guide", 75, 0),
        ("person_a_guide", 75, 50),
        ("person_a_guide", 0, 50),
        ("person_b_guide", 50, 0),
        ("person_b_guide", 50, 25),
        ("person_b_guide", 0, 25),
    ]
    lines = ["series,x,y"]
    lines.extend(f"{s},{_fmt(x)},{_fmt(y)}" for s, x, y in rows)
    return "\n".join(lines) + "\n"


def _fig_grid_csv(name: str, other: Callable[[float], float]) -> str:
    lines = [f"modifier,logistic,{name},abs_diff"]
    for m in range(-100, 101):
        lg = logistic_cdf(float(m), 0.0, _FIG_SCALE)
        ot = other(float(m))
        lines.append(f"{m},{_fmt(lg)},{_fmt(ot)},{_fmt(abs(lg - ot))}")
    return "\n".join(lines) + "\n"


def _fig5() -> str:
    three_d6 = reduce(convolve, [die(6)] * 3)
    report = discrete_vs_logistic(three_d6)
    lines = ["x,dice_cdf,logistic_cdf,abs_diff"]
    for x, a, b in zip(report.grid, report.cdf_a, report.cdf_b):
        lines.append(f"{_fmt(x)},{_fmt(a)},{_fmt(b)},{_fmt(abs(a - b))}")
    return "\n".join(lines) + "\n"


def figure_data(which: str) -> str:
    """CSV series behind each reference figure.

    * fig2: linear easy/hard mapping with threshold guides (series,x,y)
    * fig3: logistic vs variance-matched uniform over modifiers -100..100
    * fig4: logistic vs variance-matched normal over the same range
    * fig5: 3d6 step CDF vs moment-matched logistic at half-integer points
    """
    if which == "fig2":
        return _fig2()
    if which == "fig3":
        return _fig_grid_csv("uniform", lambda t: uniform_cdf(t, 0.0, _FIG_HALFWIDTH))
    if which == "fig4":
        return _fig_grid_csv("normal", lambda t: normal_cdf(t, 0.0, _FIG_SD))
    if which == "fig5":
        return _fig5()
    raise ValueError(f"unknown figure id {which!r}; expected one of {FIGURE_IDS}")
