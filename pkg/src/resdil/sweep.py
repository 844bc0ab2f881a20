"""Parameter sweeps, argmax refinement and boundary-limit extrapolation."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

import numpy as np

from .errors import Degenerate

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RatePoint:
    parameter: float
    lhs: float
    rhs: float = math.nan
    extra: tuple = ()


@dataclass
class SweepResult:
    """Sweep samples sorted by parameter with the (refined) maximum of ``lhs``.

    ``skipped`` lists parameters whose evaluation was degenerate.
    """

    points: List[RatePoint]
    argmax_param: float
    max_rate: float
    skipped: List[float] = field(default_factory=list)

    @property
    def parameters(self):
        return np.array([pt.parameter for pt in self.points])

    @property
    def lhs(self):
        return np.array([pt.lhs for pt in self.points])

    @property
    def rhs(self):
        return np.array([pt.rhs for pt in self.points])


def grid(lo, hi, n, open_lo=False, open_hi=False):
    """``n`` equally spaced points on [lo, hi]; open ends are stepped inward."""
    if n < 2:
        raise ValueError("a grid needs at least two points")
    if not hi > lo:
        raise ValueError(f"empty or reversed range [{lo}, {hi}]")
    extra = int(open_lo) + int(open_hi)
    pts = np.linspace(lo, hi, n + extra)
    return pts[int(open_lo): len(pts) - int(open_hi)]


def _as_pair(value):
    if isinstance(value, tuple):
        lhs, rhs, *rest = value
        return float(lhs), float(rhs), tuple(rest)
    return float(value), math.nan, ()


def golden_section_max(f: Callable[[float], float], lo, hi, tol=1e-6, max_iter=200):
    """Maximize a unimodal ``f`` on [lo, hi]; returns ``(x, f(x))``.

    Degenerate evaluations count as ``-inf``.
    """

    def safe(x):
        try:
            return f(x)
        except Degenerate:
            return -math.inf

    a, b = lo, hi
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = safe(c), safe(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = safe(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = safe(d)
    x = 0.5 * (a + b)
    return x, safe(x)


def sweep(fn: Callable, params: Sequence[float], refine=True, tol=1e-6, workers=None) -> SweepResult:
    """Evaluate ``fn`` on every parameter and locate the maximum of ``lhs``.

    ``fn`` returns either a scalar (the lhs) or a tuple ``(lhs, rhs, *extra)``.
    Degenerate points are skipped.  Ties in the grid maximum go to the first
    (smallest) parameter; the grid argmax is then refined by golden-section
    search on its bracketing interval.  Evaluation may be fanned out to
    ``workers`` threads; results are reassembled by index.
    """
    params = sorted(float(p) for p in params)

    def evaluate(p):
        try:
            return _as_pair(fn(p))
        except Degenerate:
            return None

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, params))
    else:
        values = [evaluate(p) for p in params]

    points, skipped = [], []
    for p, v in zip(params, values):
        if v is None:
            skipped.append(p)
        else:
            points.append(RatePoint(p, v[0], v[1], v[2]))
    if not points:
        raise Degenerate("every sweep point was degenerate")

    lhs = np.array([pt.lhs for pt in points])
    i = int(np.argmax(lhs))
    best_x, best_f = points[i].parameter, points[i].lhs
    if refine and len(points) > 2:
        lo = points[max(i - 1, 0)].parameter
        hi = points[min(i + 1, len(points) - 1)].parameter
        x, fx = golden_section_max(lambda t: _as_pair(fn(t))[0], lo, hi, tol=tol)
        if fx > best_f:
            best_x, best_f = x, fx
    return SweepResult(points, best_x, best_f, skipped)


def neville_extrapolate(hs, values, at=0.0):
    """Evaluate the interpolating polynomial through ``(hs, values)`` at ``at``."""
    hs = [float(h) for h in hs]
    p = [float(v) for v in values]
    n = len(p)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((at - hs[i + k]) * p[i] + (hs[i] - at) * p[i + 1]) / (hs[i] - hs[i + k])
    return p[0]


def boundary_limit(f: Callable[[float], float], boundary, direction=1.0, eps=1e-2, factors=(1.0, 0.1, 0.01)):
    """Richardson-style estimate of ``lim f(x)`` as ``x -> boundary``.

    ``f`` is sampled at ``boundary + direction * eps * factor`` for each
    factor; degenerate samples are dropped and the remaining ones are
    extrapolated polynomially to zero offset.  The boundary itself is
    never evaluated.
    """
    hs, vals = [], []
    for k in factors:
        h = eps * k
        try:
            vals.append(float(f(boundary + direction * h)))
        except Degenerate:
            continue
        hs.append(h)
    if not vals:
        raise Degenerate("no usable samples near the boundary")
    return neville_extrapolate(hs, vals)
