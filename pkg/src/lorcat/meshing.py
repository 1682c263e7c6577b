"""Tessellation of certified catenoids and portable file export.

Meshes sample the surface parametrization on a uniform grid, skipping a
margin around the axis crossings where the induced metric degenerates,
and carry the zero-mean-curvature residual of every vertex.  Export
formats are Wavefront-style OBJ text for meshes and CSV or JSON for
counting output; all writers are deterministic byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .counting import CriticalConstants, SolutionSet, SweepPoint
from .geometry import (
    CatenoidSpec,
    RotationClass,
    mean_curvature_residual,
    singular_abscissae,
    surface_point,
)
from .serialize import to_jsonable

__all__ = [
    "SurfaceMesh",
    "FullySingularError",
    "tessellate",
    "export_obj",
    "parse_obj",
    "export_table",
]

# half-width of the skipped parameter band around each axis crossing
CLIP_MARGIN = 1e-3


class FullySingularError(ValueError):
    """The requested parameter range contains no regular sample row."""


@dataclass
class SurfaceMesh:
    """Grid tessellation of one catenoid patch (or several s-segments).

    ``frame`` names an isometry applied after evaluation (currently only
    "x-reflected"); when set, vertices are the image of the parametrized
    surface under that map.
    """

    vertices: np.ndarray  # (n, 3)
    faces: np.ndarray  # (m, 3) vertex indices, triangles
    residuals: np.ndarray  # (n,)
    params: np.ndarray  # (n, 2) the (s, t) grid values per vertex
    s_range: tuple[float, float]
    t_range: tuple[float, float]
    n_s: int
    n_t: int
    spec: CatenoidSpec | None = None
    frame: str | None = None

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals))) if self.residuals.size else 0.0


def reflect_mesh_x(mesh: SurfaceMesh) -> SurfaceMesh:
    """Image of the mesh under the isometry (x, y, z) -> (-x, y, z)."""
    vertices = mesh.vertices.copy()
    vertices[:, 0] *= -1.0
    return SurfaceMesh(
        vertices=vertices,
        faces=mesh.faces.copy(),
        residuals=mesh.residuals.copy(),
        params=mesh.params.copy(),
        s_range=mesh.s_range,
        t_range=mesh.t_range,
        n_s=mesh.n_s,
        n_t=mesh.n_t,
        spec=mesh.spec,
        frame="x-reflected",
    )


def _segment_rows(spec: CatenoidSpec, s_values: np.ndarray) -> list[list[int]]:
    """Indices of kept rows, grouped so no group straddles a singular band."""
    zeros = singular_abscissae(spec, float(s_values[0]) - 1.0, float(s_values[-1]) + 1.0)
    keep = [
        i
        for i, s in enumerate(s_values)
        if all(abs(s - z) > CLIP_MARGIN for z in zeros)
    ]
    groups: list[list[int]] = []
    for i in keep:
        adjacent = groups and i == groups[-1][-1] + 1
        crossing = adjacent and any(s_values[i - 1] < z < s_values[i] for z in zeros)
        if adjacent and not crossing:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def tessellate(
    spec: CatenoidSpec,
    s_range: tuple[float, float],
    t_range: tuple[float, float],
    n_s: int,
    n_t: int,
) -> SurfaceMesh:
    """Uniform-grid mesh of the surface over the given parameter box.

    Rows within ``CLIP_MARGIN`` of an axis crossing are dropped and faces
    never bridge a crossing, so every vertex is a regular surface point
    and carries a well-defined residual.  Raises ``FullySingularError``
    when nothing survives the clipping.
    """
    if n_s < 2 or n_t < 2:
        raise ValueError("tessellate requires n_s >= 2 and n_t >= 2")
    s_lo, s_hi = float(s_range[0]), float(s_range[1])
    t_lo, t_hi = float(t_range[0]), float(t_range[1])
    if not (s_lo < s_hi and t_lo < t_hi):
        raise ValueError("parameter ranges must be non-degenerate")
    s_values = np.linspace(s_lo, s_hi, n_s)
    t_values = np.linspace(t_lo, t_hi, n_t)
    groups = _segment_rows(spec, s_values)
    if not groups:
        raise FullySingularError("parameter range lies inside the singular exclusion zone")

    verts: list[np.ndarray] = []
    params: list[tuple[float, float]] = []
    residuals: list[np.ndarray] = []
    faces: list[tuple[int, int, int]] = []
    offset = 0
    for group in groups:
        s_grid = s_values[group][:, None]
        t_grid = t_values[None, :]
        pts = surface_point(spec, s_grid, t_grid)
        res = mean_curvature_residual(spec, s_grid, t_grid)
        rows = len(group)
        verts.append(pts.reshape(rows * n_t, 3))
        residuals.append(np.asarray(res, float).reshape(rows * n_t))
        for i in group:
            for t in t_values:
                params.append((float(s_values[i]), float(t)))
        for i in range(rows - 1):
            for j in range(n_t - 1):
                v00 = offset + i * n_t + j
                v01 = v00 + 1
                v10 = v00 + n_t
                v11 = v10 + 1
                faces.append((v00, v10, v11))
                faces.append((v00, v11, v01))
        offset += rows * n_t
    return SurfaceMesh(
        vertices=np.vstack(verts),
        faces=np.asarray(faces, dtype=int).reshape(-1, 3),
        residuals=np.concatenate(residuals),
        params=np.asarray(params, dtype=float),
        s_range=(s_lo, s_hi),
        t_range=(t_lo, t_hi),
        n_s=n_s,
        n_t=n_t,
        spec=spec,
    )


def _format_g9(x: float) -> str:
    return f"{x:.9g}"


def export_obj(mesh: SurfaceMesh, path) -> None:
    """Write the mesh as Wavefront-style OBJ text.

    Vertices are printed with 9 significant digits, faces are 1-based
    triangles, and the header comments record the generating catenoid and
    grid so the file is self-describing.  Output is deterministic.
    """
    n = mesh.vertices.shape[0]
    if mesh.faces.size and (mesh.faces.min() < 0 or mesh.faces.max() >= n):
        raise ValueError("mesh contains face indices outside the vertex range")
    lines = ["# lorcat surface mesh"]
    if mesh.spec is not None:
        p = mesh.spec.profile
        lines.append(
            "# spec rotation={} causal={} family={} a={!r} b={!r} subfamily={}".format(
                mesh.spec.rotation.value,
                mesh.spec.causal.value,
                p.family.value,
                p.a,
                p.b,
                mesh.spec.subfamily or "-",
            )
        )
    lines.append(
        "# grid s_lo={!r} s_hi={!r} t_lo={!r} t_hi={!r} n_s={} n_t={}".format(
            mesh.s_range[0], mesh.s_range[1], mesh.t_range[0], mesh.t_range[1], mesh.n_s, mesh.n_t
        )
    )
    if mesh.frame:
        lines.append(f"# frame map={mesh.frame}")
    lines.append(f"# max_residual={mesh.max_residual!r}")
    for v in mesh.vertices:
        lines.append(f"v {_format_g9(v[0])} {_format_g9(v[1])} {_format_g9(v[2])}")
    for f in mesh.faces:
        lines.append(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def parse_obj(path) -> tuple[np.ndarray, np.ndarray, dict]:
    """Read back vertices, faces and header metadata of an exported OBJ.

    Header comment lines of the form ``# key token=value ...`` come back
    as a flat dict of string values.
    """
    vertices: list[list[float]] = []
    faces: list[list[int]] = []
    header: dict[str, str] = {}
    for line in Path(path).read_text(encoding="ascii").splitlines():
        if line.startswith("# ") and "=" in line:
            for token in line[2:].split():
                key, eq, value = token.partition("=")
                if eq:
                    header.setdefault(key, value)
        elif line.startswith("v "):
            vertices.append([float(x) for x in line.split()[1:4]])
        elif line.startswith("f "):
            faces.append([int(x.split("/")[0]) - 1 for x in line.split()[1:]])
    return (
        np.asarray(vertices, dtype=float).reshape(-1, 3),
        np.asarray(faces, dtype=int).reshape(-1, 3),
        header,
    )


def _sweep_rows(series: list[SweepPoint]) -> tuple[list[str], list[list]]:
    keys = ["1a", "1b", "2a", "2b"]
    head = ["h", "raw_count", "deduped_count"] + [f"n_{k}" for k in keys] + ["tangential"]
    rows = []
    for pt in series:
        rows.append(
            [repr(pt.h), pt.raw_count, pt.deduped_count]
            + [pt.subfamily_counts.get(k, 0) for k in keys]
            + [int(pt.tangential)]
        )
    return head, rows


def export_table(data, path, fmt: str = "csv") -> None:
    """Write a sweep series, a solution set or the constants to disk.

    Sweep series go to CSV (header row, '.' decimals, LF endings); the
    other payloads serialize to JSON with full round-trip precision.
    """
    path = Path(path)
    if fmt == "csv":
        if not (isinstance(data, list) and all(isinstance(p, SweepPoint) for p in data)):
            raise ValueError("csv export expects a sweep series")
        head, rows = _sweep_rows(data)
        text = "\n".join([",".join(head)] + [",".join(str(c) for c in row) for row in rows])
        path.write_text(text + "\n", encoding="ascii", newline="\n")
        return
    if fmt == "json":
        if isinstance(data, list) and all(isinstance(p, SweepPoint) for p in data):
            payload = [to_jsonable(p) for p in data]
        elif isinstance(data, (SolutionSet, CriticalConstants)):
            payload = to_jsonable(data)
        else:
            payload = to_jsonable(data)
        path.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii", newline="\n"
        )
        return
    raise ValueError("format must be 'csv' or 'json'")


def default_t_range(spec: CatenoidSpec) -> tuple[float, float]:
    """Full turn for elliptic surfaces, a symmetric window otherwise."""
    if spec.rotation is RotationClass.ELLIPTIC:
        return (0.0, 2.0 * math.pi)
    return (-1.5, 1.5)
