"""Catenoids spanning coaxial circles in Lorentz-Minkowski 3-space."""

__version__ = "0.1.0"

from .geometry import (
    ADMISSIBLE_CELLS,
    CatenoidSpec,
    CausalCharacter,
    CircleSpec,
    DegenerateMetricError,
    FundamentalForms,
    InadmissibleCellError,
    ProfileCurve,
    ProfileFamily,
    RotationClass,
    causal_character,
    circle_point,
    fundamental_forms,
    lorentz_inner,
    mean_curvature_residual,
    metric_discriminant,
    profile_eval,
    rotation_matrix,
    surface_point,
)
from .counting import (
    BoundaryPair,
    CellResult,
    CriticalConstants,
    SolutionSet,
    SweepPoint,
    count_all,
    count_hyperbolic_I,
    count_parabolic,
    count_spacelike_elliptic,
    count_spacelike_hyperbolic_II,
    count_timelike_elliptic,
    count_timelike_hyperbolic_II,
    critical_constants,
    normalize_pair,
    sweep_N,
)
from .meshing import SurfaceMesh, export_obj, export_table, parse_obj, tessellate
from .rootfind import (
    Bracket,
    Multiplicity,
    PeriodicExtrema,
    RootResult,
    ScanConfig,
    bisect,
    count_roots,
    periodic_extrema,
    scan_brackets,
    solve_monotone,
    solve_tangency,
)
