"""Guarded scalar root machinery.

Bracket scanning, bisection with an optional Newton finish, root counting
with detection of tangential (double) roots, extremum schedules of the
periodic boundary-gap functions, and a two-level bisection that locates
the parameter value at which a double root is born.

Everything here is deterministic: identical inputs produce bit-identical
outputs, and every returned root lies inside its originating bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "Bracket",
    "Multiplicity",
    "RootResult",
    "PeriodicExtrema",
    "ScanConfig",
    "EvaluationError",
    "scan_brackets",
    "bisect",
    "solve_monotone",
    "count_roots",
    "count_roots_on_segments",
    "periodic_extrema",
    "solve_tangency",
]

BISECT_MAX_ITER = 200
NEWTON_HANDOFF_WIDTH = 1e-6
EXPANSION_CAP = 2.0**60


class EvaluationError(ValueError):
    """A target function returned a non-finite value."""

    def __init__(self, x: float, value: float):
        super().__init__(f"non-finite function value {value!r} at x={x!r}")
        self.x = x
        self.value = value


class Multiplicity(Enum):
    SIMPLE = "simple"
    TANGENTIAL = "tangential"


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError("bracket requires lo <= hi")
        if self.f_lo * self.f_hi > 0.0:
            raise ValueError("bracket endpoints must not have the same strict sign")


@dataclass(frozen=True)
class RootResult:
    x: float
    residual: float
    multiplicity: Multiplicity
    iterations: int
    bracket: tuple[float, float] | None = None


@dataclass(frozen=True)
class ScanConfig:
    """Scan resolution and tangency thresholds for ``count_roots``."""

    n: int = 2001
    zero_tol: float = 1e-14
    root_tol: float = 1e-13
    merge_tol: float = 1e-6
    extremum_value_tol: float = 1e-9
    derivative_tol: float = 1e-8


def _call(f: Callable[[float], float], x: float) -> float:
    try:
        v = float(f(x))
    except OverflowError:
        return math.inf
    if math.isnan(v):
        raise EvaluationError(x, v)
    return v


def _grid_values(f, xs: np.ndarray) -> np.ndarray:
    """Evaluate f on a grid, using vectorized evaluation when supported."""
    try:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape == xs.shape:
            return vals
    except (TypeError, ValueError, OverflowError):
        pass
    return np.array([_call(f, float(x)) for x in xs], dtype=float)


def scan_brackets(f, lo: float, hi: float, n: int, zero_tol: float = 1e-14) -> list[Bracket]:
    """Sign-change intervals of f on a uniform n-point grid over [lo, hi].

    Grid points where ``|f| < zero_tol`` are reported as degenerate
    brackets (lo == hi).  Raises ``EvaluationError`` with the offending
    abscissa if f evaluates to NaN anywhere on the grid.
    """
    if not lo < hi:
        raise ValueError("scan_brackets requires lo < hi")
    if n < 2:
        raise ValueError("scan_brackets requires n >= 2")
    xs = np.linspace(lo, hi, n)
    vals = _grid_values(f, xs)
    bad = np.where(np.isnan(vals))[0]
    if bad.size:
        raise EvaluationError(float(xs[bad[0]]), float(vals[bad[0]]))

    out: list[Bracket] = []
    tiny = np.abs(vals) < zero_tol
    for i in np.where(tiny)[0]:
        x = float(xs[i])
        out.append(Bracket(x, x, float(vals[i]), float(vals[i])))
    sign = np.sign(vals)
    sign[tiny] = 0.0
    change = np.where(sign[:-1] * sign[1:] < 0.0)[0]
    for i in change:
        out.append(Bracket(float(xs[i]), float(xs[i + 1]), float(vals[i]), float(vals[i + 1])))
    out.sort(key=lambda b: b.lo)
    return out


def bisect(f, bracket: Bracket, tol: float = 1e-13, fprime=None) -> RootResult:
    """Bisection on a sign-change bracket, to interval width <= tol.

    When ``fprime`` is given, Newton steps (clamped to the current
    bracket) take over once the interval width drops below 1e-6; this
    keeps the global bisection safety and finishes quadratically.
    """
    lo, hi, flo, fhi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if lo == hi or flo == 0.0:
        return RootResult(lo, flo, Multiplicity.SIMPLE, 0, (bracket.lo, bracket.hi))
    if fhi == 0.0:
        return RootResult(hi, fhi, Multiplicity.SIMPLE, 0, (bracket.lo, bracket.hi))

    iters = 0
    x = 0.5 * (lo + hi)
    while hi - lo > tol and iters < BISECT_MAX_ITER:
        if fprime is not None and hi - lo <= NEWTON_HANDOFF_WIDTH:
            fx = _call(f, x)
            dfx = _call(fprime, x)
            if dfx != 0.0 and math.isfinite(dfx):
                step = fx / dfx
                candidate = x - step
                if lo < candidate < hi:
                    # keep the bracket valid before moving to the Newton point
                    if fx * flo < 0.0:
                        hi = x
                    elif fx != 0.0:
                        lo, flo = x, fx
                    x = candidate
                    iters += 1
                    if abs(step) <= tol:
                        break
                    continue
        mid = 0.5 * (lo + hi)
        fmid = _call(f, mid)
        iters += 1
        if fmid == 0.0:
            x = mid
            break
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
        x = 0.5 * (lo + hi)
    if iters >= BISECT_MAX_ITER and hi - lo > tol:
        raise RuntimeError("bisect exceeded the iteration cap")
    return RootResult(x, _call(f, x), Multiplicity.SIMPLE, iters, (bracket.lo, bracket.hi))


def solve_monotone(f, target: float, a0: float, tol: float = 1e-13) -> Optional[RootResult]:
    """Root of f(a) = target for f strictly monotone on (0, inf).

    The bracket expands geometrically from ``a0`` (downward toward zero
    and upward, capped at a factor of 2**60) until the target value is
    straddled; absence of a straddle means the limits of f exclude the
    target and ``None`` is returned.
    """
    if a0 <= 0.0:
        raise ValueError("solve_monotone requires a positive starting point")
    g = lambda a: _call(f, a) - target
    lo = hi = a0
    glo = ghi = g(a0)
    if glo == 0.0:
        return RootResult(a0, 0.0, Multiplicity.SIMPLE, 0, (a0, a0))

    def straddles() -> bool:
        # strict sign change; an exact zero reached only in the expansion
        # limit means the target is a limit value, not an attained one
        return (glo < 0.0 < ghi) or (ghi < 0.0 < glo)

    cap_lo = a0 / EXPANSION_CAP
    cap_hi = a0 * EXPANSION_CAP
    while not straddles():
        progressed = False
        if lo > cap_lo:
            lo *= 0.5
            glo = g(lo)
            progressed = True
            if straddles():
                break
        if hi < cap_hi:
            hi *= 2.0
            ghi = g(hi)
            progressed = True
        if not progressed:
            return None
    bracket = Bracket(lo, hi, glo, ghi)
    result = bisect(g, bracket, tol=tol)
    return RootResult(result.x, result.residual, result.multiplicity, result.iterations, (lo, hi))


def _refine_extremum(fprime, lo: float, hi: float, tol: float = 1e-13) -> Optional[float]:
    dlo, dhi = _call(fprime, lo), _call(fprime, hi)
    if dlo == 0.0:
        return lo
    if dhi == 0.0:
        return hi
    if dlo * dhi > 0.0:
        return None
    res = bisect(fprime, Bracket(lo, hi, dlo, dhi), tol=tol)
    return res.x


def count_roots(f, fprime, lo: float, hi: float, cfg: ScanConfig | None = None) -> list[RootResult]:
    """All roots of f on [lo, hi], with double roots reported once.

    Simple roots come from sign-change brackets on a uniform scan.  An
    extremum whose function value is within ``extremum_value_tol`` of zero
    is reported as a single tangential root; any simple roots within
    ``merge_tol`` of it are absorbed (an exactly double root is measure
    zero in floating point, so near-tangent pairs are collapsed).
    """
    cfg = cfg or ScanConfig()
    brackets = scan_brackets(f, lo, hi, cfg.n, cfg.zero_tol)
    simple = sorted(
        (bisect(f, b, tol=cfg.root_tol, fprime=fprime) for b in brackets), key=lambda r: r.x
    )

    def tangential_between(x0: float, x1: float) -> Optional[RootResult]:
        x_ext = _refine_extremum(fprime, x0, x1)
        if x_ext is None:
            return None
        val = _call(f, x_ext)
        if abs(val) < cfg.extremum_value_tol and abs(_call(fprime, x_ext)) < cfg.derivative_tol:
            return RootResult(x_ext, val, Multiplicity.TANGENTIAL, 0, (x0, x1))
        return None

    # fold near-coincident simple-root pairs into one tangential root
    folded: list[RootResult] = []
    i = 0
    while i < len(simple):
        if i + 1 < len(simple) and simple[i + 1].x - simple[i].x <= cfg.merge_tol:
            pad = 0.25 * max(simple[i + 1].x - simple[i].x, cfg.root_tol)
            touch = tangential_between(simple[i].x - pad, simple[i + 1].x + pad)
            if touch is not None:
                folded.append(touch)
                i += 2
                continue
        r = simple[i]
        # a flat zero sitting exactly on a grid point is a double root too
        if r.bracket is not None and r.bracket[0] == r.bracket[1]:
            if abs(_call(fprime, r.x)) < cfg.derivative_tol:
                r = RootResult(r.x, r.residual, Multiplicity.TANGENTIAL, r.iterations, r.bracket)
        folded.append(r)
        i += 1

    # extrema that touch zero without producing a sign change at all
    xs = np.linspace(lo, hi, cfg.n)
    dvals = _grid_values(fprime, xs)
    bad = np.where(np.isnan(dvals))[0]
    if bad.size:
        raise EvaluationError(float(xs[bad[0]]), float(dvals[bad[0]]))
    sign = np.sign(dvals)
    windows = [(float(xs[i]), float(xs[i + 1])) for i in np.where(sign[:-1] * sign[1:] < 0.0)[0]]
    for i in np.where(sign == 0.0)[0]:
        step = float(xs[1] - xs[0])
        windows.append((float(xs[i]) - 0.5 * step, float(xs[i]) + 0.5 * step))
    merged = list(folded)
    for x0, x1 in windows:
        touch = tangential_between(x0, x1)
        if touch is not None and all(abs(touch.x - m.x) > cfg.merge_tol for m in merged):
            merged.append(touch)
    merged.sort(key=lambda r: r.x)
    return merged


def count_roots_on_segments(
    f,
    breakpoints: Sequence[float],
    cfg: ScanConfig | None = None,
    open_left: bool = False,
) -> list[RootResult]:
    """Roots of f given abscissae between which f is monotone.

    ``breakpoints`` must be an increasing sequence starting and ending at
    the domain endpoints, with every interior extremum included, so each
    consecutive pair brackets at most one root.  An interior breakpoint
    whose value is within the tangency tolerance of zero is reported as
    one tangential root.  With ``open_left`` the first breakpoint stands
    in for an open domain end and is never itself reported as a root.
    """
    cfg = cfg or ScanConfig()
    pts = [float(x) for x in breakpoints]
    if sorted(pts) != pts:
        raise ValueError("breakpoints must be increasing")
    vals = [_call(f, x) for x in pts]
    roots: list[RootResult] = []
    for i, (x, v) in enumerate(zip(pts, vals)):
        interior = 0 < i < len(pts) - 1
        if i == 0 and open_left:
            continue
        if abs(v) < cfg.extremum_value_tol and (interior or abs(v) < cfg.zero_tol):
            mult = Multiplicity.TANGENTIAL if interior else Multiplicity.SIMPLE
            roots.append(RootResult(x, v, mult, 0, (x, x)))
    for (x0, v0), (x1, v1) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
        if v0 * v1 < 0.0:
            res = bisect(f, Bracket(x0, x1, v0, v1), tol=cfg.root_tol)
            roots.append(res)
    merged: list[RootResult] = []
    for r in sorted(roots, key=lambda r: (r.x, r.multiplicity is not Multiplicity.TANGENTIAL)):
        if any(abs(r.x - m.x) <= cfg.merge_tol for m in merged):
            continue
        merged.append(r)
    return merged


@dataclass(frozen=True)
class PeriodicExtrema:
    """Extremum schedule of a boundary-gap function cos(a h) - a (or its
    sine-family shift), valid for h > 1 where the function oscillates."""

    h: float
    kind: str
    m0: float
    minima: tuple[float, ...]
    maxima: tuple[float, ...]
    minima_values: tuple[float, ...]
    maxima_values: tuple[float, ...]


def periodic_extrema(h: float, kind: str = "cos_family", k_max: int = 8) -> PeriodicExtrema:
    """Extremum abscissae and values of cos(a h) - a or sin(a h) - a.

    ``m0`` is the first local minimum of the cosine-family function,
    found by bisecting sin(a h) = -1/h on its first admissible branch.
    Minima repeat with period 2 pi / h and drop by 2 pi / h per period;
    the maxima values use the closed form sqrt(h^2 - 1)/h + m0 - (2k+1)
    pi / h.  The sine family is obtained from the half-period shift
    identity relating the two functions.

    Raises ``ValueError`` for h <= 1, where the functions are monotone
    and have no extremum schedule.
    """
    if h <= 1.0:
        raise ValueError("periodic_extrema requires h > 1")
    if kind not in ("cos_family", "sin_family"):
        raise ValueError("kind must be 'cos_family' or 'sin_family'")
    # first local minimum of cos(a h) - a: sin(m0 h) = -1/h with m0 h in (pi, 3 pi / 2)
    res = solve_monotone_interval(
        lambda a: math.sin(a * h), -1.0 / h, math.pi / h, 1.5 * math.pi / h
    )
    m0 = res
    period = 2.0 * math.pi / h
    root_disc = math.sqrt(h * h - 1.0) / h
    g_m0 = -root_disc - m0

    minima = tuple(m0 + k * period for k in range(k_max))
    minima_values = tuple(g_m0 - k * period for k in range(k_max))
    maxima = tuple(-m0 + (2 * k + 1) * math.pi / h for k in range(1, k_max + 1))
    maxima_values = tuple(root_disc + m0 - (2 * k + 1) * math.pi / h for k in range(1, k_max + 1))
    if kind == "cos_family":
        return PeriodicExtrema(h, kind, m0, minima, maxima, minima_values, maxima_values)

    # sine family: G(a + pi/(2h)) = g(a) - pi/(2h); the first critical
    # point of G is a maximum, shifted in from the k = 0 cosine maximum.
    shift = 0.5 * math.pi / h
    sin_maxima = (-m0 + math.pi / h + shift,) + tuple(x + shift for x in maxima)
    sin_max_values = (root_disc + m0 - math.pi / h - shift,) + tuple(
        v - shift for v in maxima_values
    )
    sin_minima = tuple(x + shift for x in minima)
    sin_min_values = tuple(v - shift for v in minima_values)
    return PeriodicExtrema(
        h, kind, minima[0] + shift, sin_minima, sin_maxima, sin_min_values, sin_max_values
    )


def solve_monotone_interval(f, target: float, lo: float, hi: float, tol: float = 1e-14) -> float:
    """Root of f = target on [lo, hi] where f is monotone across it."""
    g = lambda x: _call(f, x) - target
    glo, ghi = g(lo), g(hi)
    if glo * ghi > 0.0:
        raise ValueError("target not straddled on the given interval")
    return bisect(g, Bracket(lo, hi, glo, ghi), tol=tol).x


def solve_tangency(
    F,
    dF_dx,
    lam_lo: float,
    lam_hi: float,
    x_window,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Parameter value at which a double root of F(., lam) is born.

    The inner solve locates the tracked extremum x*(lam) by bisecting
    dF/dx on the bracket returned by ``x_window(lam)``; the outer
    bisection drives the extremum value F(x*(lam), lam) to zero over
    [lam_lo, lam_hi].  Returns ``(lam*, x*)`` with |F(x*, lam*)| < 1e-10.

    Raises ``ValueError`` when the extremum-value function does not
    change sign on the interval.
    """

    def extremum_value(lam: float) -> tuple[float, float]:
        xlo, xhi = x_window(lam)
        x_ext = _refine_extremum(lambda x: dF_dx(x, lam), xlo, xhi, tol=1e-15)
        if x_ext is None:
            raise ValueError(f"no extremum inside the window at parameter {lam!r}")
        return x_ext, _call(lambda x: F(x, lam), x_ext)

    lo, hi = float(lam_lo), float(lam_hi)
    x_lo, v_lo = extremum_value(lo)
    x_hi, v_hi = extremum_value(hi)
    if v_lo * v_hi > 0.0:
        raise ValueError("extremum value does not change sign on the parameter interval")
    x_mid, v_mid = x_lo, v_lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        x_mid, v_mid = extremum_value(mid)
        if v_mid == 0.0:
            return mid, x_mid
        if v_lo * v_mid < 0.0:
            hi, v_hi = mid, v_mid
        else:
            lo, v_lo = mid, v_mid
    lam_star = 0.5 * (lo + hi)
    x_star, _ = extremum_value(lam_star)
    return lam_star, x_star
