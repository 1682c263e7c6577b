"""Lorentz-Minkowski primitives for rotational zero-mean-curvature surfaces.

The ambient space is R^3 with the indefinite metric dx^2 + dy^2 - dz^2.
This module provides the metric, causal classification, the three
one-parameter rotation groups (timelike, spacelike and lightlike axis),
their circle orbits, the profile-curve families that generate catenoids,
surface parametrizations with closed-form partials, and a scale-free
residual for the zero-mean-curvature equation

    E det(X_s, X_t, X_tt) - 2F det(X_s, X_t, X_st) + G det(X_s, X_t, X_ss) = 0.

All operations are pure; every value is immutable and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Tuple, Union

import numpy as np

__all__ = [
    "CausalCharacter",
    "RotationClass",
    "ProfileFamily",
    "CircleSpec",
    "ProfileCurve",
    "CatenoidSpec",
    "FundamentalForms",
    "DegenerateMetricError",
    "InadmissibleCellError",
    "lorentz_inner",
    "causal_character",
    "rotation_matrix",
    "circle_point",
    "circle_orbit_speed",
    "profile_eval",
    "surface_point",
    "surface_jet",
    "fundamental_forms",
    "mean_curvature_residual",
    "metric_discriminant",
    "singular_abscissae",
    "regular_mask",
    "ADMISSIBLE_CELLS",
]

# Scale-invariant floating point guard for the lightlike classification.
LIGHTLIKE_TOL = 1e-12

# Sample points closer than this to a profile zero (axis crossing) are
# treated as singular and excluded from residual sampling.
SINGULAR_MARGIN = 1e-6

ArrayLike = Union[float, np.ndarray]
ProfileJet = Callable[[ArrayLike], Tuple[ArrayLike, ArrayLike, ArrayLike]]


class DegenerateMetricError(ValueError):
    """Raised when the induced metric is degenerate at the requested point."""


class InadmissibleCellError(ValueError):
    """Raised for a (rotation, causal, family) combination with no catenoid."""


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class RotationClass(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC_I = "hyperbolic-i"
    HYPERBOLIC_II = "hyperbolic-ii"
    PARABOLIC = "parabolic"


class ProfileFamily(Enum):
    SINH_OVER_A = "sinh-over-a"
    SIN_OVER_A = "sin-over-a"
    COSH_OVER_A = "cosh-over-a"
    CUBIC_PLUS = "cubic-plus"
    CUBIC_MINUS = "cubic-minus"


def lorentz_inner(u: ArrayLike, v: ArrayLike) -> ArrayLike:
    """Indefinite inner product u.x v.x + u.y v.y - u.z v.z.

    Accepts arrays of shape ``(..., 3)`` and broadcasts elementwise.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def causal_character(v: ArrayLike) -> CausalCharacter:
    """Classify a single vector as spacelike, timelike or lightlike.

    The zero vector counts as spacelike.  A nonzero vector is lightlike
    when ``|<v,v>| <= 1e-12 * (1 + |v|_euclid^2)``, which keeps the test
    invariant under rescaling of the input.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError("causal_character expects a single 3-vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    q = float(lorentz_inner(v, v))
    euclid2 = float(np.dot(v, v))
    if euclid2 == 0.0:
        return CausalCharacter.SPACELIKE
    if abs(q) <= LIGHTLIKE_TOL * (1.0 + euclid2):
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.SPACELIKE if q > 0.0 else CausalCharacter.TIMELIKE


def rotation_matrix(rotation: RotationClass, t: float) -> np.ndarray:
    """Matrix of the one-parameter rotation group for the given axis type.

    Elliptic rotations fix the timelike axis span{e3}, both hyperbolic
    types fix the spacelike axis span{e1} (they share the same matrix and
    differ only in which orbit plane the surface uses), and parabolic
    rotations fix the lightlike axis span{e1 + e3}.
    """
    t = float(t)
    if rotation is RotationClass.ELLIPTIC:
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    if rotation in (RotationClass.HYPERBOLIC_I, RotationClass.HYPERBOLIC_II):
        ch, sh = math.cosh(t), math.sinh(t)
        return np.array([[1.0, 0.0, 0.0], [0.0, ch, sh], [0.0, sh, ch]])
    if rotation is RotationClass.PARABOLIC:
        q = 0.5 * t * t
        return np.array([[1.0 - q, t, q], [-t, 1.0, t], [-q, t, 1.0 + q]])
    raise ValueError(f"unknown rotation class {rotation!r}")


@dataclass(frozen=True)
class CircleSpec:
    """One coaxial circle: a rotation orbit that is not a straight line.

    Elliptic circles are Euclidean circles of radius ``radius`` in the
    plane z = ``plane``.  Hyperbolic circles are hyperbola branches in the
    plane x = ``plane``; ``side`` picks the branch (sign of y for type I,
    sign of z for type II).  Parabolic circles are parabolas determined by
    the anchor point (anchor_a, 0, anchor_c), which must be off the axis,
    that is anchor_a != anchor_c.
    """

    rotation: RotationClass
    plane: float = 0.0
    radius: float = 1.0
    side: int = 1
    anchor_a: float = 0.0
    anchor_c: float = 0.0

    def __post_init__(self) -> None:
        if self.rotation is RotationClass.PARABOLIC:
            if not (math.isfinite(self.anchor_a) and math.isfinite(self.anchor_c)):
                raise ValueError("parabolic anchor must be finite")
            if self.anchor_a == self.anchor_c:
                raise ValueError("parabolic anchor must be off the axis (a != c)")
        else:
            if not (math.isfinite(self.plane) and math.isfinite(self.radius)):
                raise ValueError("circle plane and radius must be finite")
            if self.radius <= 0.0:
                raise ValueError("circle radius must be positive")
            if self.side not in (1, -1):
                raise ValueError("circle side must be +1 or -1")

    @staticmethod
    def elliptic(z: float, r: float) -> "CircleSpec":
        return CircleSpec(RotationClass.ELLIPTIC, plane=z, radius=r)

    @staticmethod
    def hyperbolic_i(x: float, r: float, side: int = 1) -> "CircleSpec":
        return CircleSpec(RotationClass.HYPERBOLIC_I, plane=x, radius=r, side=side)

    @staticmethod
    def hyperbolic_ii(x: float, r: float, side: int = 1) -> "CircleSpec":
        return CircleSpec(RotationClass.HYPERBOLIC_II, plane=x, radius=r, side=side)

    @staticmethod
    def parabolic(a: float, c: float) -> "CircleSpec":
        return CircleSpec(RotationClass.PARABOLIC, anchor_a=a, anchor_c=c)


def circle_point(circle: CircleSpec, t: ArrayLike) -> np.ndarray:
    """Point of the circle at parameter ``t`` (vectorized over ``t``)."""
    t = np.asarray(t, dtype=float)
    rot = circle.rotation
    if rot is RotationClass.ELLIPTIC:
        r, z = circle.radius, circle.plane
        return np.stack([r * np.cos(t), r * np.sin(t), z * np.ones_like(t)], axis=-1)
    if rot is RotationClass.HYPERBOLIC_I:
        x, sr = circle.plane, circle.side * circle.radius
        return np.stack([x * np.ones_like(t), sr * np.cosh(t), sr * np.sinh(t)], axis=-1)
    if rot is RotationClass.HYPERBOLIC_II:
        x, sr = circle.plane, circle.side * circle.radius
        return np.stack([x * np.ones_like(t), sr * np.sinh(t), sr * np.cosh(t)], axis=-1)
    if rot is RotationClass.PARABOLIC:
        a, c = circle.anchor_a, circle.anchor_c
        w = t * t / (2.0 * (c - a))
        return np.stack([a + w, t, c + w], axis=-1)
    raise ValueError(f"unknown rotation class {rot!r}")


def circle_orbit_speed(circle: CircleSpec) -> float:
    """Factor relating the circle parameter to the group parameter.

    ``circle_point(c, t)`` equals ``rotation_matrix(cls, t / speed)`` applied
    to ``circle_point(c, 0)``.  The factor is 1 except for parabolic circles,
    whose conventional parametrization runs at speed ``c - a`` along the
    group orbit.
    """
    if circle.rotation is RotationClass.PARABOLIC:
        return circle.anchor_c - circle.anchor_a
    return 1.0


@dataclass(frozen=True)
class ProfileCurve:
    """Generating curve of a rotational zero-mean-curvature surface.

    Families and their closed forms (``a`` and ``b`` are the parameters):

    * sinh-over-a:  f(s) = sinh(a s + b) / a,   a != 0
    * sin-over-a:   f(s) = sin(a s + b) / a,    a != 0
    * cosh-over-a:  f(s) = cosh(a s + b) / a,   a != 0
    * cubic-plus:   f(s) = a s^3 + b,           a > 0
    * cubic-minus:  f(s) = -a s^3 + b,          a > 0
    """

    family: ProfileFamily
    a: float
    b: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("profile parameters must be finite")
        if self.family in (ProfileFamily.CUBIC_PLUS, ProfileFamily.CUBIC_MINUS):
            if self.a <= 0.0:
                raise ValueError("cubic profiles require a > 0")
        elif self.a == 0.0:
            raise ValueError("trigonometric and hyperbolic profiles require a != 0")


def profile_eval(profile: ProfileCurve, s: ArrayLike):
    """Value and first two derivatives of the profile at ``s``."""
    s = np.asarray(s, dtype=float)
    a, b = profile.a, profile.b
    u = a * s + b
    fam = profile.family
    if fam is ProfileFamily.SINH_OVER_A:
        f = np.sinh(u) / a
        return f, np.cosh(u), a * np.sinh(u)
    if fam is ProfileFamily.SIN_OVER_A:
        f = np.sin(u) / a
        return f, np.cos(u), -a * np.sin(u)
    if fam is ProfileFamily.COSH_OVER_A:
        f = np.cosh(u) / a
        return f, np.sinh(u), a * np.cosh(u)
    if fam is ProfileFamily.CUBIC_PLUS:
        return a * s**3 + b, 3.0 * a * s**2, 6.0 * a * s
    if fam is ProfileFamily.CUBIC_MINUS:
        return -a * s**3 + b, -3.0 * a * s**2, -6.0 * a * s
    raise ValueError(f"unknown profile family {fam!r}")


# Admissible (rotation, causal) cells and the profile family each one uses.
# There is no spacelike surface of hyperbolic type I.
ADMISSIBLE_CELLS = {
    (RotationClass.ELLIPTIC, CausalCharacter.SPACELIKE): ProfileFamily.SINH_OVER_A,
    (RotationClass.ELLIPTIC, CausalCharacter.TIMELIKE): ProfileFamily.SIN_OVER_A,
    (RotationClass.HYPERBOLIC_I, CausalCharacter.TIMELIKE): ProfileFamily.COSH_OVER_A,
    (RotationClass.HYPERBOLIC_II, CausalCharacter.SPACELIKE): ProfileFamily.SIN_OVER_A,
    (RotationClass.HYPERBOLIC_II, CausalCharacter.TIMELIKE): ProfileFamily.SINH_OVER_A,
    (RotationClass.PARABOLIC, CausalCharacter.SPACELIKE): ProfileFamily.CUBIC_PLUS,
    (RotationClass.PARABOLIC, CausalCharacter.TIMELIKE): ProfileFamily.CUBIC_MINUS,
}


@dataclass(frozen=True)
class CatenoidSpec:
    """A catenoid: rotation class, causal character and profile curve."""

    rotation: RotationClass
    causal: CausalCharacter
    profile: ProfileCurve
    subfamily: str | None = None

    def __post_init__(self) -> None:
        expected = ADMISSIBLE_CELLS.get((self.rotation, self.causal))
        if expected is None:
            raise InadmissibleCellError(
                f"no {self.causal.value} catenoid exists for rotation class "
                f"{self.rotation.value}"
            )
        if self.profile.family is not expected:
            raise InadmissibleCellError(
                f"({self.rotation.value}, {self.causal.value}) requires the "
                f"{expected.value} profile, got {self.profile.family.value}"
            )


def _resolve_profile(spec_or_rotation, profile):
    if isinstance(spec_or_rotation, CatenoidSpec):
        if profile is not None:
            raise ValueError("pass either a CatenoidSpec or (rotation, profile)")
        return spec_or_rotation.rotation, spec_or_rotation.profile
    if profile is None:
        raise ValueError("a profile is required when passing a rotation class")
    return spec_or_rotation, profile


def _eval_jet(profile, s):
    if isinstance(profile, ProfileCurve):
        return profile_eval(profile, s)
    f, f1, f2 = profile(s)
    return np.asarray(f, float), np.asarray(f1, float), np.asarray(f2, float)


def surface_point(spec_or_rotation, s: ArrayLike, t: ArrayLike, profile=None) -> np.ndarray:
    """Point X(s, t) of the rotational surface (vectorized, broadcasting)."""
    rotation, prof = _resolve_profile(spec_or_rotation, profile)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    f, _, _ = _eval_jet(prof, s)
    if rotation is RotationClass.ELLIPTIC:
        return np.stack(np.broadcast_arrays(f * np.cos(t), f * np.sin(t), s + 0.0 * t), axis=-1)
    if rotation is RotationClass.HYPERBOLIC_I:
        return np.stack(np.broadcast_arrays(s + 0.0 * t, f * np.cosh(t), f * np.sinh(t)), axis=-1)
    if rotation is RotationClass.HYPERBOLIC_II:
        return np.stack(np.broadcast_arrays(s + 0.0 * t, f * np.sinh(t), f * np.cosh(t)), axis=-1)
    if rotation is RotationClass.PARABOLIC:
        # A(t) applied to (f + s, 0, f - s); the lightlike axis direction
        # e1 + e3 is fixed, so the t-dependence is polynomial.
        x = f + s - t * t * s
        y = -2.0 * t * s
        z = f - s - t * t * s
        return np.stack(np.broadcast_arrays(x, y, z), axis=-1)
    raise ValueError(f"unknown rotation class {rotation!r}")


def surface_jet(spec_or_rotation, s: ArrayLike, t: ArrayLike, profile=None):
    """First and second partials of X at (s, t).

    Returns ``(X_s, X_t, X_ss, X_st, X_tt)``, each of shape ``(..., 3)``.
    The derivatives are closed form in the profile jet (f, f', f'').
    """
    rotation, prof = _resolve_profile(spec_or_rotation, profile)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    f, f1, f2 = _eval_jet(prof, s)

    def pack(*comps):
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    one = np.ones_like(s + 0.0 * t)
    zero = np.zeros_like(one)
    if rotation is RotationClass.ELLIPTIC:
        c, sn = np.cos(t), np.sin(t)
        return (
            pack(f1 * c, f1 * sn, one),
            pack(-f * sn, f * c, zero),
            pack(f2 * c, f2 * sn, zero),
            pack(-f1 * sn, f1 * c, zero),
            pack(-f * c, -f * sn, zero),
        )
    if rotation is RotationClass.HYPERBOLIC_I:
        ch, sh = np.cosh(t), np.sinh(t)
        return (
            pack(one, f1 * ch, f1 * sh),
            pack(zero, f * sh, f * ch),
            pack(zero, f2 * ch, f2 * sh),
            pack(zero, f1 * sh, f1 * ch),
            pack(zero, f * ch, f * sh),
        )
    if rotation is RotationClass.HYPERBOLIC_II:
        ch, sh = np.cosh(t), np.sinh(t)
        return (
            pack(one, f1 * sh, f1 * ch),
            pack(zero, f * ch, f * sh),
            pack(zero, f2 * sh, f2 * ch),
            pack(zero, f1 * ch, f1 * sh),
            pack(zero, f * sh, f * ch),
        )
    if rotation is RotationClass.PARABOLIC:
        return (
            pack(f1 + 1.0 - t * t, -2.0 * t + zero, f1 - 1.0 - t * t),
            pack(-2.0 * t * s, -2.0 * s + zero, -2.0 * t * s),
            pack(f2 + zero, zero, f2 + zero),
            pack(-2.0 * t + zero, -2.0 * one, -2.0 * t + zero),
            pack(-2.0 * s + zero, zero, -2.0 * s + zero),
        )
    raise ValueError(f"unknown rotation class {rotation!r}")


def _det3(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (
        u[..., 0] * (v[..., 1] * w[..., 2] - v[..., 2] * w[..., 1])
        - u[..., 1] * (v[..., 0] * w[..., 2] - v[..., 2] * w[..., 0])
        + u[..., 2] * (v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0])
    )


@dataclass(frozen=True)
class FundamentalForms:
    """First-form coefficients and the three second-order determinants."""

    E: ArrayLike
    F: ArrayLike
    G: ArrayLike
    d_tt: ArrayLike
    d_st: ArrayLike
    d_ss: ArrayLike

    @property
    def discriminant(self) -> ArrayLike:
        return self.E * self.G - self.F * self.F


def fundamental_forms(spec_or_rotation, s: ArrayLike, t: ArrayLike, profile=None) -> FundamentalForms:
    """E, F, G and det(X_s, X_t, X_..) for the three second partials."""
    xs, xt, xss, xst, xtt = surface_jet(spec_or_rotation, s, t, profile)
    return FundamentalForms(
        E=lorentz_inner(xs, xs),
        F=lorentz_inner(xs, xt),
        G=lorentz_inner(xt, xt),
        d_tt=_det3(xs, xt, xtt),
        d_st=_det3(xs, xt, xst),
        d_ss=_det3(xs, xt, xss),
    )


def metric_discriminant(spec_or_rotation, s: ArrayLike, t: ArrayLike, profile=None) -> ArrayLike:
    """EG - F^2 of the induced metric; positive on spacelike surfaces."""
    forms = fundamental_forms(spec_or_rotation, s, t, profile)
    return forms.discriminant


def mean_curvature_residual(spec_or_rotation, s: ArrayLike, t: ArrayLike, profile=None) -> ArrayLike:
    """Scale-free residual of the zero-mean-curvature equation at (s, t).

    The raw left side ``E d_tt - 2 F d_st + G d_ss`` is homogeneous in the
    parametrization scale, so it is divided by one plus the sum of the
    term magnitudes.  The result is comparable against a fixed threshold
    regardless of the size of the surface; exact solutions evaluate to
    rounding noise (well below 1e-9).

    Raises
    ------
    DegenerateMetricError
        If the induced metric is degenerate at any requested point, which
        happens where the surface meets the rotation axis.
    """
    forms = fundamental_forms(spec_or_rotation, s, t, profile)
    E, F, G = forms.E, forms.F, forms.G
    scale = np.maximum(np.maximum(np.abs(E), np.abs(F)), np.abs(G))
    disc = np.abs(forms.discriminant)
    degenerate = (scale == 0.0) | (disc <= 1e-12 * scale * scale)
    if np.any(degenerate):
        raise DegenerateMetricError(
            "induced metric is degenerate at a sampled point (axis crossing)"
        )
    t1 = E * forms.d_tt
    t2 = 2.0 * F * forms.d_st
    t3 = G * forms.d_ss
    return (t1 - t2 + t3) / (1.0 + np.abs(t1) + np.abs(t2) + np.abs(t3))


def singular_abscissae(spec, s_lo: float, s_hi: float) -> list[float]:
    """Parameter values in [s_lo, s_hi] where the surface meets the axis.

    For the sine and hyperbolic-sine profiles these are the zeros of f;
    the parabolic surfaces are singular at s = 0.  Hyperbolic-cosine
    profiles never meet the axis.
    """
    rotation, prof = (spec.rotation, spec.profile) if isinstance(spec, CatenoidSpec) else spec
    if rotation is RotationClass.PARABOLIC:
        return [0.0] if s_lo <= 0.0 <= s_hi else []
    fam = prof.family
    a, b = prof.a, prof.b
    if fam is ProfileFamily.SINH_OVER_A:
        z = -b / a
        return [z] if s_lo <= z <= s_hi else []
    if fam is ProfileFamily.SIN_OVER_A:
        # zeros at s = (k pi - b) / a
        lo_u, hi_u = sorted((a * s_lo + b, a * s_hi + b))
        k_lo = math.ceil(lo_u / math.pi - 1e-12)
        k_hi = math.floor(hi_u / math.pi + 1e-12)
        return sorted((k * math.pi - b) / a for k in range(k_lo, k_hi + 1))
    return []


def regular_mask(spec: CatenoidSpec, s: np.ndarray, margin: float = SINGULAR_MARGIN) -> np.ndarray:
    """Boolean mask of sample abscissae away from singular points."""
    s = np.asarray(s, dtype=float)
    if spec.rotation is RotationClass.PARABOLIC:
        return np.abs(s) > margin
    f, _, _ = profile_eval(spec.profile, s)
    if spec.profile.family is ProfileFamily.COSH_OVER_A:
        return np.ones_like(s, dtype=bool)
    return np.abs(f) > margin
