"""Catenoid counting for pairs of coaxial circles.

Each rotation class reduces the spanning problem to a planar two-point
problem for the profile families: hyperbolic-sine and hyperbolic-cosine
profiles lead to strictly monotone or two-branch scalar equations, the
sine profiles lead to the oscillatory boundary-gap functions
``cos(a h) - a`` and ``sin(a h) - a`` whose root count grows with the
separation, and the parabolic cubics force the single parameter
directly.  The critical constants (the catenary fold ratio and the
tangency onsets of the sine families) are computed by the same
machinery.

Counts are reported both raw (every admissible parameter pair) and
deduped (one representative per congruence class under profile
negation, reversal of the profile parameter and the swap symmetry of
the two circles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import (
    CatenoidSpec,
    CausalCharacter,
    CircleSpec,
    ProfileCurve,
    ProfileFamily,
    RotationClass,
    mean_curvature_residual,
    metric_discriminant,
    profile_eval,
    regular_mask,
)
from .rootfind import (
    Multiplicity,
    RootResult,
    ScanConfig,
    count_roots,
    count_roots_on_segments,
    periodic_extrema,
    solve_monotone,
    solve_monotone_interval,
    solve_tangency,
)

__all__ = [
    "BoundaryPair",
    "NormalizedPair",
    "SolutionSet",
    "CellResult",
    "CriticalConstants",
    "SweepPoint",
    "normalize_pair",
    "count_spacelike_elliptic",
    "count_timelike_elliptic",
    "count_hyperbolic_I",
    "count_timelike_hyperbolic_II",
    "count_spacelike_hyperbolic_II",
    "count_parabolic",
    "count_all",
    "critical_constants",
    "sweep_N",
    "certify_solution_set",
]

RADII_EQUAL_RTOL = 1e-12


@dataclass(frozen=True)
class BoundaryPair:
    """Two coaxial circles in distinct parallel planes."""

    c1: CircleSpec
    c2: CircleSpec

    def __post_init__(self) -> None:
        if self.c1.rotation is not self.c2.rotation:
            raise ValueError("both circles must share the rotation class")
        rot = self.c1.rotation
        if rot is RotationClass.PARABOLIC:
            if self.c1.anchor_a - self.c1.anchor_c == self.c2.anchor_a - self.c2.anchor_c:
                raise ValueError("parabolic circles must lie in distinct planes")
        else:
            if self.c1.plane == self.c2.plane:
                raise ValueError("circles must lie in distinct planes")

    @property
    def rotation(self) -> RotationClass:
        return self.c1.rotation


@dataclass(frozen=True)
class NormalizedPair:
    """Planar reduction of a boundary pair, with the inverse transform.

    The profile plane uses the axis coordinate as abscissa and the radius
    (signed by branch side for hyperbolic circles) as ordinate.  After a
    translation and a homothety the first circle becomes the point ``q``
    and the second becomes ``p``; ``origin`` and ``scale`` record the
    transform so solved profiles map back to the input frame.
    """

    rotation: RotationClass
    p: tuple[float, float]
    q: tuple[float, float]
    scale: float
    origin: float
    x_reflected: bool = False
    side_flipped: bool = False
    obstruction: str | None = None


@dataclass
class SolutionSet:
    """All catenoids found for one (rotation class, causal) cell."""

    case: str
    solutions: list[CatenoidSpec] = field(default_factory=list)
    deduped_count: int = 0
    subfamily_counts: dict[str, int] = field(default_factory=dict)
    obstruction: str | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def raw_count(self) -> int:
        return len(self.solutions)


@dataclass(frozen=True)
class CellResult:
    """Entry of the per-cell table produced by ``count_all``."""

    status: str  # "counted" | "inadmissible" | "out-of-scope"
    solution_set: SolutionSet | None = None
    note: str | None = None


@dataclass(frozen=True)
class CriticalConstants:
    """Numerically solved thresholds of the counting table."""

    c1_catenary: float
    h_star_1a: float
    h_star_2a: float
    onset_1b: float
    onset_2b: float
    c0: float
    residuals: dict[str, float]


@dataclass(frozen=True)
class SweepPoint:
    h: float
    raw_count: int
    deduped_count: int
    subfamily_counts: dict[str, int]
    tangential: bool


def _safe_exp(u: float) -> float:
    try:
        return math.exp(u)
    except OverflowError:
        return math.inf


def _record_root(r: RootResult) -> dict:
    return {
        "x": r.x,
        "residual": r.residual,
        "multiplicity": r.multiplicity.value,
        "iterations": r.iterations,
    }


# ---------------------------------------------------------------------------
# normalization


def normalize_pair(pair: BoundaryPair) -> NormalizedPair:
    """Reduce a boundary pair to the planar two-point problem.

    For elliptic and hyperbolic pairs the first circle is mapped to the
    unit-radius point ``q = (0, +-1)`` by translating the axis coordinate
    and dividing by its radius.  Hyperbolic type I pairs on opposite
    sides of the separating plane y = 0 cannot be spanned and come back
    with an obstruction instead of a normalization.  Type II pairs are
    put into a canonical frame (first circle on the negative branch, to
    the left) by the reflection isometries recorded in the result.  For
    parabolic pairs the anchor points reduce to profile-plane points and
    the first one is moved to (1, 0).
    """
    rot = pair.rotation
    c1, c2 = pair.c1, pair.c2
    if rot is RotationClass.ELLIPTIC:
        return NormalizedPair(
            rotation=rot,
            p=((c2.plane - c1.plane) / c1.radius, c2.radius / c1.radius),
            q=(0.0, 1.0),
            scale=c1.radius,
            origin=c1.plane,
        )
    if rot is RotationClass.HYPERBOLIC_I:
        if c1.side != c2.side:
            return NormalizedPair(
                rotation=rot,
                p=(0.0, 0.0),
                q=(0.0, 0.0),
                scale=1.0,
                origin=0.0,
                obstruction="circles lie on opposite sides of the plane y = 0",
            )
        flipped = c1.side == -1
        return NormalizedPair(
            rotation=rot,
            p=((c2.plane - c1.plane) / c1.radius, c2.radius / c1.radius),
            q=(0.0, 1.0),
            scale=c1.radius,
            origin=c1.plane,
            side_flipped=flipped,
        )
    if rot is RotationClass.HYPERBOLIC_II:
        return NormalizedPair(
            rotation=rot,
            p=((c2.plane - c1.plane) / c1.radius, c2.side * c2.radius / c1.radius),
            q=(0.0, float(c1.side)),
            scale=c1.radius,
            origin=c1.plane,
        )
    if rot is RotationClass.PARABOLIC:
        u1, v1 = 0.5 * (c1.anchor_a - c1.anchor_c), 0.5 * (c1.anchor_a + c1.anchor_c)
        u2, v2 = 0.5 * (c2.anchor_a - c2.anchor_c), 0.5 * (c2.anchor_a + c2.anchor_c)
        return NormalizedPair(
            rotation=rot,
            p=(u2 / u1, (v2 - v1) / u1),
            q=(1.0, 0.0),
            scale=u1,
            origin=v1,
        )
    raise ValueError(f"unknown rotation class {rot!r}")


# ---------------------------------------------------------------------------
# spacelike elliptic (and the shared monotone sinh machinery)


def _sinh_chord_increasing(x: float) -> Callable[[float], float]:
    """a -> value at abscissa x of the rising unit-anchored sinh profile.

    The profile sinh(a s + arcsinh a)/a passes through (0, 1); its value
    at x expands to cosh(a x) + sqrt(1 + a^2)/a * sinh(a x), evaluated in
    exponential form so huge arguments saturate to +-inf instead of
    producing NaN from inf - inf.
    """

    def g(a: float) -> float:
        u = a * x
        k_minus_1 = 1.0 / (a * (math.hypot(1.0, a) + a))
        k_plus_1 = 2.0 + k_minus_1
        return 0.5 * (k_plus_1 * _safe_exp(u) - k_minus_1 * _safe_exp(-u))

    return g


def _sinh_chord_decreasing(x: float) -> Callable[[float], float]:
    """a -> value at abscissa x of the falling unit-anchored sinh profile."""

    def g(a: float) -> float:
        u = a * x
        k_minus_1 = 1.0 / (a * (math.hypot(1.0, a) + a))
        k_plus_1 = 2.0 + k_minus_1
        return 0.5 * (k_plus_1 * _safe_exp(-u) - k_minus_1 * _safe_exp(u))

    return g


def count_spacelike_elliptic(p: tuple[float, float], certify: bool = True) -> SolutionSet:
    """Spacelike elliptic catenoids through the normalized planar pair.

    ``p`` is the second circle in profile coordinates after the first has
    been normalized to (0, 1): abscissa is the axis coordinate, ordinate
    the radius.  The rising and falling unit-anchored sinh profiles sweep
    the region where either the point or its mirror across the axis is
    reachable; membership decides existence and the strictly monotone
    chord-value function pins the unique parameter.  The count is 0 or 1.

    Solutions are reported in the normalized frame; ``count_all`` maps
    them back through the recorded transform.
    """
    x0, y0 = float(p[0]), float(p[1])
    if x0 == 0.0:
        raise ValueError("second circle must lie in a different plane (abscissa != 0)")
    if y0 == 0.0:
        raise ValueError("point on the rotation axis has no circle")
    x, y = abs(x0), abs(y0)
    mirrored = x0 < 0.0

    out = SolutionSet(case="SE")
    branch: str | None = None
    target = 0.0
    if y > 1.0 + x:
        branch, target = "rising", y
    elif y < 1.0 - x:
        branch, target = "falling", y
    elif y > x - 1.0:
        branch, target = "falling", -y
    if branch is None:
        out.obstruction = "outside S u Phi(S): no unit-anchored profile reaches the point"
        return out

    if branch == "rising":
        root = solve_monotone(_sinh_chord_increasing(x), target, 1.0)
    else:
        root = solve_monotone(_sinh_chord_decreasing(x), target, 1.0)
    if root is None:
        out.obstruction = "outside S u Phi(S): no unit-anchored profile reaches the point"
        return out

    a = root.x
    b = math.asinh(a) if branch == "rising" else -math.asinh(a)
    if mirrored:
        b = -b
    spec = CatenoidSpec(
        rotation=RotationClass.ELLIPTIC,
        causal=CausalCharacter.SPACELIKE,
        profile=ProfileCurve(ProfileFamily.SINH_OVER_A, a=a, b=b),
    )
    out.solutions.append(spec)
    out.deduped_count = 1
    out.diagnostics["roots"] = [_record_root(root)]
    out.diagnostics["branch"] = branch
    if branch == "rising" and y > x - 1.0:
        out.diagnostics.setdefault("notes", []).append(
            "a second, axis-crossing profile also spans this pair; the "
            "canonical non-crossing solution is reported"
        )
    if certify:
        _certify_planar_elliptic(out, x0, y0)
    return out


def _certify_planar_elliptic(out: SolutionSet, x0: float, y0: float) -> None:
    spec = out.solutions[0]
    s_lo, s_hi = sorted((0.0, x0))
    gap = _interpolation_gap(spec, [(0.0, 1.0), (x0, abs(y0))], absolute=True)
    cert = _residual_certificate(spec, s_lo, s_hi)
    cert["max_interpolation_gap"] = gap
    out.diagnostics["certification"] = cert


# ---------------------------------------------------------------------------
# timelike elliptic (the four sine-profile sub-families)


def _cos_family_roots(h: float) -> list[RootResult]:
    """Roots of cos(a h) - a on (0, 1], counted via the extremum schedule."""
    gap = lambda a: math.cos(a * h) - a
    eps = 1e-12
    if h <= 1.0:
        return count_roots_on_segments(gap, [eps, 1.0], open_left=True)
    sched = periodic_extrema(h, "cos_family", k_max=int(h / math.pi) + 3)
    crits = sorted(x for x in (*sched.minima, *sched.maxima) if eps < x < 1.0)
    return count_roots_on_segments(gap, [eps, *crits, 1.0], open_left=True)


def _sin_family_roots(h: float) -> list[RootResult]:
    """Roots of sin(a h) - a on (0, 1]; empty for h <= 1 where it falls."""
    if h <= 1.0:
        return []
    gap = lambda a: math.sin(a * h) - a
    eps = 1e-12
    sched = periodic_extrema(h, "sin_family", k_max=int(h / math.pi) + 3)
    crits = sorted(x for x in (*sched.minima, *sched.maxima) if eps < x < 1.0)
    return count_roots_on_segments(gap, [eps, *crits, 1.0], open_left=True)


def _congruent_b(b1: float, b2: float, tol: float = 1e-9) -> bool:
    alt = (math.pi - b1) % math.pi
    return abs(b1 - b2) <= tol or abs(alt - b2) <= tol


def _dedupe_classes(params: list[tuple[float, float]], tol: float = 1e-9) -> list[list[int]]:
    classes: list[list[int]] = []
    for i, (a, b) in enumerate(params):
        for cls in classes:
            a0, b0 = params[cls[0]]
            if abs(a - a0) <= tol and _congruent_b(b0, b, tol):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def count_timelike_elliptic(r: float, h: float, certify: bool = True) -> SolutionSet:
    """Timelike elliptic catenoids joining equal-radius circles at z = +-h.

    After rescaling to unit radius the sine-profile boundary conditions
    split into four sub-families: the even profiles with the boundary gap
    ``cos(a h) - a`` (1a), the discrete pitches ``a h = k pi`` with a free
    phase (1b), the odd profiles with gap ``sin(a h) - a`` (2a), and the
    pitches ``a h = (2k + 1) pi / 2`` (2b).  Root counting for 1a and 2a
    is guided by the extremum schedule, so the counts are exact; 1b and
    2b contribute two phases per admissible pitch, one congruence class
    each.
    """
    if r <= 0.0 or h <= 0.0:
        raise ValueError("radius and separation must be positive")
    hn = h / r
    out = SolutionSet(case="TE")
    params: list[tuple[float, float]] = []
    roots_meta: list[dict] = []
    sub: dict[str, int] = {"1a": 0, "1b": 0, "2a": 0, "2b": 0}
    labels: list[str] = []

    def emit(a: float, b: float, label: str, meta: dict) -> None:
        params.append((a, b))
        labels.append(label)
        roots_meta.append(meta)

    for root in _cos_family_roots(hn):
        sub["1a"] += 1
        emit(root.x, 0.5 * math.pi, "1a", _record_root(root))
    for root in _sin_family_roots(hn):
        sub["2a"] += 1
        emit(root.x, 0.0, "2a", _record_root(root))

    k = 1
    while k * math.pi / hn <= 1.0 + 1e-15:
        a = k * math.pi / hn
        phase = math.asin(min(1.0, a))
        sub["1b"] += 1
        if abs(phase - (math.pi - phase)) <= 1e-12:
            emit(a, phase, "1b", {"pitch_index": k})
        else:
            emit(a, phase, "1b", {"pitch_index": k})
            emit(a, math.pi - phase, "1b", {"pitch_index": k})
        k += 1
    k = 0
    while (2 * k + 1) * math.pi / (2.0 * hn) <= 1.0 + 1e-15:
        a = (2 * k + 1) * math.pi / (2.0 * hn)
        phase = math.acos(min(1.0, a))
        sub["2b"] += 1
        if abs(phase - ((math.pi - phase) % math.pi)) <= 1e-12:
            emit(a, phase, "2b", {"pitch_index": k})
        else:
            emit(a, phase, "2b", {"pitch_index": k})
            emit(a, math.pi - phase, "2b", {"pitch_index": k})
        k += 1

    classes = _dedupe_classes(params)
    for idx, (a, b) in enumerate(params):
        out.solutions.append(
            CatenoidSpec(
                rotation=RotationClass.ELLIPTIC,
                causal=CausalCharacter.TIMELIKE,
                profile=ProfileCurve(ProfileFamily.SIN_OVER_A, a=a / r, b=b),
                subfamily=labels[idx],
            )
        )
    out.deduped_count = len(classes)
    out.subfamily_counts = sub
    out.diagnostics["roots"] = roots_meta
    out.diagnostics["congruence_classes"] = classes
    out.diagnostics["tangential"] = any(
        m.get("multiplicity") == Multiplicity.TANGENTIAL.value for m in roots_meta
    )
    out.diagnostics["boundary"] = {"s": [-h, h], "radius": r}
    if certify:
        _certify_equal_radius(out, r, h)
    return out


def _certify_equal_radius(out: SolutionSet, r: float, h: float) -> None:
    worst_res = 0.0
    worst_gap = 0.0
    sign_ok = True
    for spec in out.solutions:
        f_lo = float(profile_eval(spec.profile, -h)[0])
        f_hi = float(profile_eval(spec.profile, h)[0])
        gap = max(abs(abs(f_lo) - r), abs(abs(f_hi) - r)) / max(1.0, r)
        worst_gap = max(worst_gap, gap)
        cert = _residual_certificate(spec, -h, h)
        worst_res = max(worst_res, cert["max_residual"])
        sign_ok = sign_ok and cert["discriminant_sign_ok"]
    out.diagnostics["certification"] = {
        "max_residual": worst_res,
        "max_interpolation_gap": worst_gap,
        "discriminant_sign_ok": sign_ok,
    }


# ---------------------------------------------------------------------------
# hyperbolic type I (catenary two-point problem)


def count_hyperbolic_I(pair: BoundaryPair, certify: bool = True) -> SolutionSet:
    """Timelike type I hyperbolic catenoids spanning the pair: 0, 1 or 2.

    Both circles must sit on the same branch side of the plane y = 0,
    because each cosh-profile surface stays in one open half-space.  The
    two boundary conditions eliminate the phase through the two arccosh
    branches, leaving a one-parameter residual whose roots give the
    classical catenary count of zero, one (tangential) or two.
    """
    if pair.rotation is not RotationClass.HYPERBOLIC_I:
        raise ValueError("count_hyperbolic_I expects a hyperbolic type I pair")
    out = SolutionSet(case="HI")
    if pair.c1.side != pair.c2.side:
        out.obstruction = "circles lie on opposite sides of the plane y = 0"
        return out
    side = pair.c1.side
    lo, hi = sorted((pair.c1, pair.c2), key=lambda c: c.plane)
    x1, r1 = lo.plane, lo.radius
    x2, r2 = hi.plane, hi.radius
    delta = x2 - x1

    def branch_fn(eps: float) -> Callable[[float], float]:
        def f(a: float) -> float:
            w = math.acosh(max(1.0, a * r1))
            try:
                return math.cosh(a * delta + eps * w) - a * r2
            except OverflowError:
                return math.inf

        return f

    # beyond this the exponential chord dominates both branches
    a_cap = max(2.0 / r1, 1.0)
    for _ in range(200):
        need = math.log(8.0 * a_cap * a_cap * r1 * r2 + 8.0) / delta
        if a_cap >= need:
            break
        a_cap = need + 1.0
    a_cap *= 2.0

    cfg = ScanConfig(n=4001)
    found: list[tuple[RootResult, float, float]] = []  # (root, a, b)
    for eps in (1.0, -1.0):
        for root in count_roots(
            branch_fn(eps), _numeric_derivative(branch_fn(eps)), 1.0 / r1, a_cap, cfg
        ):
            a = root.x
            b = eps * math.acosh(max(1.0, a * r1)) - a * x1
            if any(abs(a - a0) <= 1e-8 and abs(b - b0) <= 1e-8 for _, a0, b0 in found):
                continue
            found.append((root, a, b))
    found.sort(key=lambda item: item[1])

    for root, a, b in found:
        out.solutions.append(
            CatenoidSpec(
                rotation=RotationClass.HYPERBOLIC_I,
                causal=CausalCharacter.TIMELIKE,
                profile=ProfileCurve(ProfileFamily.COSH_OVER_A, a=side * a, b=side * b),
            )
        )
    out.deduped_count = len(found)
    out.diagnostics["roots"] = [_record_root(r) for r, _, _ in found]
    out.diagnostics["tangential"] = any(
        r.multiplicity is Multiplicity.TANGENTIAL for r, _, _ in found
    )
    out.diagnostics["boundary"] = {"s": [x1, x2], "targets": [side * r1, side * r2]}
    if certify and found:
        worst_res, worst_gap, sign_ok = 0.0, 0.0, True
        for spec in out.solutions:
            gap = _interpolation_gap(spec, [(x1, side * r1), (x2, side * r2)], absolute=False)
            worst_gap = max(worst_gap, gap)
            cert = _residual_certificate(spec, x1, x2)
            worst_res = max(worst_res, cert["max_residual"])
            sign_ok = sign_ok and cert["discriminant_sign_ok"]
        out.diagnostics["certification"] = {
            "max_residual": worst_res,
            "max_interpolation_gap": worst_gap,
            "discriminant_sign_ok": sign_ok,
        }
    return out


def _numeric_derivative(f: Callable[[float], float], rel_step: float = 1e-7):
    def df(x: float) -> float:
        step = rel_step * (1.0 + abs(x))
        return (f(x + step) - f(x - step)) / (2.0 * step)

    return df


# ---------------------------------------------------------------------------
# hyperbolic type II


def count_timelike_hyperbolic_II(pair: BoundaryPair, certify: bool = True) -> SolutionSet:
    """Timelike type II hyperbolic catenoids spanning the pair: 0 or 1.

    The rising sinh profile changes sign exactly once, so the circles
    must sit on opposite sides of the plane z = 0.  In the canonical
    frame (negative branch on the left) the chord-value function is
    strictly increasing from ``separation - r1`` and the unique solution
    exists precisely when the radii sum exceeds the separation.
    """
    if pair.rotation is not RotationClass.HYPERBOLIC_II:
        raise ValueError("count_timelike_hyperbolic_II expects a hyperbolic type II pair")
    out = SolutionSet(case="HIIt")
    if pair.c1.side == pair.c2.side:
        out.obstruction = "circles lie on the same side of the plane z = 0"
        return out
    lo, hi = sorted((pair.c1, pair.c2), key=lambda c: c.plane)
    x_reflected = False
    if lo.side == 1:
        lo, hi = (
            CircleSpec.hyperbolic_ii(-hi.plane, hi.radius, hi.side),
            CircleSpec.hyperbolic_ii(-lo.plane, lo.radius, lo.side),
        )
        x_reflected = True
    x1, r1 = lo.plane, lo.radius
    x2, r2 = hi.plane, hi.radius
    delta = x2 - x1

    def chord(a: float) -> float:
        u = a * delta - math.asinh(r1 * a)
        try:
            return math.sinh(u) / a
        except OverflowError:
            return math.inf

    root = solve_monotone(chord, r2, 1.0)
    if root is None:
        out.obstruction = "radii sum does not exceed the separation"
        out.diagnostics["frame"] = {"x_reflected": x_reflected}
        return out
    a = root.x
    b = -math.asinh(r1 * a) - a * x1
    out.solutions.append(
        CatenoidSpec(
            rotation=RotationClass.HYPERBOLIC_II,
            causal=CausalCharacter.TIMELIKE,
            profile=ProfileCurve(ProfileFamily.SINH_OVER_A, a=a, b=b),
        )
    )
    out.deduped_count = 1
    out.diagnostics["roots"] = [_record_root(root)]
    out.diagnostics["frame"] = {"x_reflected": x_reflected}
    out.diagnostics["boundary"] = {"s": [x1, x2], "targets": [-r1, r2]}
    if certify:
        spec = out.solutions[0]
        gap = _interpolation_gap(spec, [(x1, -r1), (x2, r2)], absolute=False)
        cert = _residual_certificate(spec, x1, x2)
        cert["max_interpolation_gap"] = gap
        out.diagnostics["certification"] = cert
    return out


def count_spacelike_hyperbolic_II(r: float, h: float, certify: bool = True) -> SolutionSet:
    """Spacelike type II hyperbolic catenoids for equal radii at x = +-h.

    The sine profile obeys exactly the boundary equations of the
    timelike elliptic case, so the four-sub-family engine applies
    verbatim; only the rotation class and causal label change.
    """
    te = count_timelike_elliptic(r, h, certify=False)
    out = SolutionSet(case="HIIs")
    out.solutions = [
        CatenoidSpec(
            rotation=RotationClass.HYPERBOLIC_II,
            causal=CausalCharacter.SPACELIKE,
            profile=spec.profile,
            subfamily=spec.subfamily,
        )
        for spec in te.solutions
    ]
    out.deduped_count = te.deduped_count
    out.subfamily_counts = te.subfamily_counts
    out.diagnostics = dict(te.diagnostics)
    if certify:
        _certify_equal_radius(out, r, h)
    return out


# ---------------------------------------------------------------------------
# parabolic


def count_parabolic(q: tuple[float, float], certify: bool = True) -> dict[str, SolutionSet]:
    """Parabolic catenoids through the normalized planar pair: 0 or 1 each.

    With the first circle normalized to (1, 0) the cubic profile through
    both points is forced to ``a (x^3 - 1)``; the sign regions of
    ``(x0^3 - 1, y0)`` decide whether the spacelike or the timelike
    branch admits its unique positive coefficient.
    """
    x0, y0 = float(q[0]), float(q[1])
    if x0 == 1.0 and y0 == 0.0:
        raise ValueError("second circle coincides with the normalized first circle")
    if x0 == 0.0:
        raise ValueError("point on the rotation axis has no circle")
    space = SolutionSet(case="PAs")
    time = SolutionSet(case="PAt")
    denom = x0**3 - 1.0
    if denom == 0.0:
        space.obstruction = "second point lies in the plane of the first circle"
        time.obstruction = space.obstruction
        return {"PAs": space, "PAt": time}

    a_plus = y0 / denom
    if a_plus > 0.0:
        spec = CatenoidSpec(
            rotation=RotationClass.PARABOLIC,
            causal=CausalCharacter.SPACELIKE,
            profile=ProfileCurve(ProfileFamily.CUBIC_PLUS, a=a_plus, b=-a_plus),
        )
        space.solutions.append(spec)
        space.deduped_count = 1
        if certify:
            gap = _interpolation_gap(spec, [(1.0, 0.0), (x0, y0)], absolute=True)
            cert = _residual_certificate(spec, *sorted((1.0, x0)))
            cert["max_interpolation_gap"] = gap
            space.diagnostics["certification"] = cert
    else:
        space.obstruction = "outside R1 u R2: no rising cubic through both points"

    a_minus = -a_plus
    if a_minus > 0.0:
        spec = CatenoidSpec(
            rotation=RotationClass.PARABOLIC,
            causal=CausalCharacter.TIMELIKE,
            profile=ProfileCurve(ProfileFamily.CUBIC_MINUS, a=a_minus, b=a_minus),
        )
        time.solutions.append(spec)
        time.deduped_count = 1
        if certify:
            gap = _interpolation_gap(spec, [(1.0, 0.0), (x0, y0)], absolute=True)
            cert = _residual_certificate(spec, *sorted((1.0, x0)))
            cert["max_interpolation_gap"] = gap
            time.diagnostics["certification"] = cert
    else:
        time.obstruction = "outside T1 u T2: no falling cubic through both points"
    return {"PAs": space, "PAt": time}


# ---------------------------------------------------------------------------
# dispatch over all admissible cells


def _radii_equal(r1: float, r2: float) -> bool:
    return abs(r1 - r2) <= RADII_EQUAL_RTOL * max(r1, r2)


def _shift_profile(profile: ProfileCurve, scale: float, origin: float) -> ProfileCurve:
    """Map a profile solved in normalized coordinates back to the input frame."""
    fam = profile.family
    if fam in (ProfileFamily.CUBIC_PLUS, ProfileFamily.CUBIC_MINUS):
        # f(u) = origin + scale * fhat(u / scale)
        return ProfileCurve(fam, a=profile.a / (scale * scale), b=origin + profile.b * scale)
    a = profile.a / scale
    return ProfileCurve(fam, a=a, b=profile.b - a * origin)


def _denormalize_set(sset: SolutionSet, scale: float, origin: float) -> SolutionSet:
    mapped = SolutionSet(
        case=sset.case,
        deduped_count=sset.deduped_count,
        subfamily_counts=dict(sset.subfamily_counts),
        obstruction=sset.obstruction,
        diagnostics=dict(sset.diagnostics),
    )
    for spec in sset.solutions:
        mapped.solutions.append(
            CatenoidSpec(
                rotation=spec.rotation,
                causal=spec.causal,
                profile=_shift_profile(spec.profile, scale, origin),
                subfamily=spec.subfamily,
            )
        )
    return mapped


def count_all(pair: BoundaryPair, certify: bool = True) -> dict[str, CellResult]:
    """Solution sets for every admissible cell of the counting table.

    Keys are the cell labels (SE, TE, HI, HIIt, HIIs, PAs, PAt) plus a
    structurally empty marker for the spacelike type I cell.  Sine-family
    cells (TE, HIIs) cover equal radii only and report out-of-scope for
    unequal ones; all other cells accept arbitrary radii.
    """
    rot = pair.rotation
    table: dict[str, CellResult] = {}
    if rot is RotationClass.ELLIPTIC:
        norm = normalize_pair(pair)
        se = count_spacelike_elliptic(norm.p, certify=certify)
        table["SE"] = CellResult("counted", _denormalize_set(se, norm.scale, norm.origin))
        r1, r2 = pair.c1.radius, pair.c2.radius
        if _radii_equal(r1, r2):
            mid = 0.5 * (pair.c1.plane + pair.c2.plane)
            half = 0.5 * abs(pair.c2.plane - pair.c1.plane)
            te = count_timelike_elliptic(r1, half, certify=certify)
            table["TE"] = CellResult("counted", _denormalize_set(te, 1.0, mid))
        else:
            table["TE"] = CellResult(
                "out-of-scope", None, "timelike elliptic counting covers equal radii only"
            )
        return table
    if rot is RotationClass.HYPERBOLIC_I:
        table["HI"] = CellResult("counted", count_hyperbolic_I(pair, certify=certify))
        table["HIs"] = CellResult(
            "inadmissible", None, "no spacelike hyperbolic catenoid of type I exists"
        )
        return table
    if rot is RotationClass.HYPERBOLIC_II:
        table["HIIt"] = CellResult("counted", count_timelike_hyperbolic_II(pair, certify=certify))
        r1, r2 = pair.c1.radius, pair.c2.radius
        if _radii_equal(r1, r2):
            mid = 0.5 * (pair.c1.plane + pair.c2.plane)
            half = 0.5 * abs(pair.c2.plane - pair.c1.plane)
            hiis = count_spacelike_hyperbolic_II(r1, half, certify=certify)
            table["HIIs"] = CellResult("counted", _denormalize_set(hiis, 1.0, mid))
        else:
            table["HIIs"] = CellResult(
                "out-of-scope", None, "spacelike type II counting covers equal radii only"
            )
        return table
    if rot is RotationClass.PARABOLIC:
        norm = normalize_pair(pair)
        per_branch = count_parabolic(norm.p, certify=certify)
        for cell, sset in per_branch.items():
            table[cell] = CellResult("counted", _denormalize_set(sset, norm.scale, norm.origin))
        return table
    raise ValueError(f"unknown rotation class {rot!r}")


# ---------------------------------------------------------------------------
# critical constants and sweeps


def critical_constants() -> CriticalConstants:
    """Solve the defining equations of the counting thresholds.

    The catenary fold ratio comes from the tangency of the cosh chord
    (u tanh u = 1); the sine-family onsets are the parameters at which
    the boundary-gap functions develop a double root at their second
    local maximum.  The discrete-pitch onsets are exact multiples of pi.
    """
    u_star = solve_monotone_interval(lambda u: u * math.tanh(u), 1.0, 1.0, 2.0)
    c1 = 2.0 * u_star / math.cosh(u_star)

    def window_cos(h: float):
        sched = periodic_extrema(h, "cos_family", k_max=3)
        m0, m1 = sched.minima[0], sched.minima[1]
        top = sched.maxima[0]
        return (m0 + 0.05 * (top - m0), m1 - 0.05 * (m1 - top))

    h_1a, a_1a = solve_tangency(
        lambda a, h: math.cos(a * h) - a,
        lambda a, h: -h * math.sin(a * h) - 1.0,
        5.5,
        7.0,
        window_cos,
    )

    def window_sin(h: float):
        sched = periodic_extrema(h, "sin_family", k_max=3)
        m0, m1 = sched.minima[0], sched.minima[1]
        top = sched.maxima[1]
        return (m0 + 0.05 * (top - m0), m1 - 0.05 * (m1 - top))

    h_2a, a_2a = solve_tangency(
        lambda a, h: math.sin(a * h) - a,
        lambda a, h: h * math.cos(a * h) - 1.0,
        7.0,
        8.5,
        window_sin,
    )

    residuals = {
        "c1_catenary": abs(u_star * math.tanh(u_star) - 1.0),
        "h_star_1a": abs(math.cos(a_1a * h_1a) - a_1a),
        "h_star_1a_slope": abs(-h_1a * math.sin(a_1a * h_1a) - 1.0),
        "h_star_2a": abs(math.sin(a_2a * h_2a) - a_2a),
        "h_star_2a_slope": abs(h_2a * math.cos(a_2a * h_2a) - 1.0),
        "onset_1b": 0.0,
        "onset_2b": 0.0,
        "c0": 0.0,
    }
    return CriticalConstants(
        c1_catenary=c1,
        h_star_1a=h_1a,
        h_star_2a=h_2a,
        onset_1b=math.pi,
        onset_2b=0.5 * math.pi,
        c0=1.0,
        residuals=residuals,
    )


def sweep_N(
    r: float,
    h_lo: float,
    h_hi: float,
    steps: int,
    cell: str = "TE",
    certify: bool = False,
) -> list[SweepPoint]:
    """Counts over a uniform separation grid for the sine-family cells."""
    if cell not in ("TE", "HIIs"):
        raise ValueError("sweep covers the TE and HIIs cells")
    if steps < 2:
        raise ValueError("sweep requires at least 2 steps")
    if not (0.0 < h_lo < h_hi):
        raise ValueError("sweep requires 0 < h_lo < h_hi")
    counter = count_timelike_elliptic if cell == "TE" else count_spacelike_hyperbolic_II
    points: list[SweepPoint] = []
    for h in np.linspace(h_lo, h_hi, steps):
        sset = counter(r, float(h), certify=certify)
        points.append(
            SweepPoint(
                h=float(h),
                raw_count=sset.raw_count,
                deduped_count=sset.deduped_count,
                subfamily_counts=dict(sset.subfamily_counts),
                tangential=bool(sset.diagnostics.get("tangential", False)),
            )
        )
    return points


# ---------------------------------------------------------------------------
# certification helpers


def _sample_grid(spec: CatenoidSpec, s_lo: float, s_hi: float, n_s: int = 10, n_t: int = 10):
    pad = 1e-9 * (1.0 + abs(s_lo) + abs(s_hi))
    candidates = np.linspace(s_lo + pad, s_hi - pad, max(8 * n_s, 64))
    keep = candidates[regular_mask(spec, candidates)]
    if keep.size == 0:
        raise ValueError("no regular sample abscissae inside the interval")
    idx = np.linspace(0, keep.size - 1, min(n_s, keep.size)).astype(int)
    s = keep[np.unique(idx)]
    if spec.rotation is RotationClass.ELLIPTIC:
        t = np.linspace(0.0, 2.0 * math.pi, n_t, endpoint=False)
    else:
        t = np.linspace(-1.5, 1.5, n_t)
    return s[:, None], t[None, :]


def _residual_certificate(spec: CatenoidSpec, s_lo: float, s_hi: float) -> dict:
    s, t = _sample_grid(spec, s_lo, s_hi)
    res = mean_curvature_residual(spec, s, t)
    disc = metric_discriminant(spec, s, t)
    want = 1.0 if spec.causal is CausalCharacter.SPACELIKE else -1.0
    return {
        "max_residual": float(np.max(np.abs(res))),
        "discriminant_sign_ok": bool(np.all(np.sign(disc) == want)),
    }


def _interpolation_gap(
    spec: CatenoidSpec, targets: list[tuple[float, float]], absolute: bool
) -> float:
    gap = 0.0
    for s_i, value in targets:
        f_i = float(profile_eval(spec.profile, s_i)[0])
        got = abs(f_i) if absolute else f_i
        want = abs(value) if absolute else value
        gap = max(gap, abs(got - want) / max(1.0, abs(want)))
    return gap


def certify_solution_set(sset: SolutionSet, s_lo: float, s_hi: float) -> dict:
    """Residual and discriminant-sign certificate over all solutions."""
    worst = {"max_residual": 0.0, "discriminant_sign_ok": True}
    for spec in sset.solutions:
        cert = _residual_certificate(spec, s_lo, s_hi)
        worst["max_residual"] = max(worst["max_residual"], cert["max_residual"])
        worst["discriminant_sign_ok"] = (
            worst["discriminant_sign_ok"] and cert["discriminant_sign_ok"]
        )
    return worst
