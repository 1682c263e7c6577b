"""Command-line front end.

Subcommands: count, constants, sweep, mesh, verify, report.  Inputs are
accepted as a JSON pair descriptor file (the canonical form) or as flat
flags compiled into it.  JSON results go to standard output with sorted
keys so identical inputs produce byte-identical output.

Exit codes: 0 the computation ran (including zero-count results and
verify PASS), 1 runtime or verification failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .counting import (
    BoundaryPair,
    CellResult,
    count_all,
    critical_constants,
    sweep_N,
)
from .geometry import (
    CatenoidSpec,
    CausalCharacter,
    CircleSpec,
    InadmissibleCellError,
    ProfileCurve,
    ProfileFamily,
    RotationClass,
    mean_curvature_residual,
    metric_discriminant,
    regular_mask,
)
from .meshing import (
    default_t_range,
    export_obj,
    export_table,
    parse_obj,
    reflect_mesh_x,
    tessellate,
)
from .serialize import to_jsonable

TOLERANCES = {
    "residual_tol": 1e-9,
    "interpolation_tol": 1e-9,
    "root_tol": 1e-13,
    "merge_tol": 1e-6,
    "extremum_value_tol": 1e-9,
    "lightlike_tol": 1e-12,
    "radii_equal_rtol": 1e-12,
}

ROTATION_NAMES = {
    "elliptic": RotationClass.ELLIPTIC,
    "hyperbolic-i": RotationClass.HYPERBOLIC_I,
    "hyperbolic-ii": RotationClass.HYPERBOLIC_II,
    "parabolic": RotationClass.PARABOLIC,
}
CAUSAL_NAMES = {
    "spacelike": CausalCharacter.SPACELIKE,
    "timelike": CausalCharacter.TIMELIKE,
}
FAMILY_NAMES = {
    "sinh": ProfileFamily.SINH_OVER_A,
    "sin": ProfileFamily.SIN_OVER_A,
    "cosh": ProfileFamily.COSH_OVER_A,
    "cubic-plus": ProfileFamily.CUBIC_PLUS,
    "cubic-minus": ProfileFamily.CUBIC_MINUS,
}


class CLIInputError(ValueError):
    pass


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _num(data: dict, key: str, path: str) -> float:
    if key not in data:
        raise CLIInputError(f"{path}.{key}: missing")
    try:
        value = float(data[key])
    except (TypeError, ValueError):
        raise CLIInputError(f"{path}.{key}: not a number") from None
    if not math.isfinite(value):
        raise CLIInputError(f"{path}.{key}: must be finite")
    return value


def _parse_circle(rotation: RotationClass, data, path: str) -> CircleSpec:
    if not isinstance(data, dict):
        raise CLIInputError(f"{path}: expected an object")
    try:
        if rotation is RotationClass.ELLIPTIC:
            z = _num(data, "z", path)
            r = _num(data, "r", path)
            if r <= 0.0:
                raise CLIInputError(f"{path}.r: must be positive")
            return CircleSpec.elliptic(z, r)
        if rotation is RotationClass.PARABOLIC:
            a = _num(data, "a", path)
            c = _num(data, "c", path)
            if a == c:
                raise CLIInputError(f"{path}.c: anchor must be off the axis (a != c)")
            return CircleSpec.parabolic(a, c)
        x = _num(data, "x", path)
        r = _num(data, "r", path)
        if r <= 0.0:
            raise CLIInputError(f"{path}.r: must be positive")
        side = int(data.get("side", 1))
        if side not in (1, -1):
            raise CLIInputError(f"{path}.side: must be 1 or -1")
        if rotation is RotationClass.HYPERBOLIC_I:
            return CircleSpec.hyperbolic_i(x, r, side)
        return CircleSpec.hyperbolic_ii(x, r, side)
    except ValueError as exc:
        if isinstance(exc, CLIInputError):
            raise
        raise CLIInputError(f"{path}: {exc}") from None


def _pair_from_descriptor(doc) -> BoundaryPair:
    if not isinstance(doc, dict):
        raise CLIInputError("pair: expected a JSON object")
    cls = doc.get("class")
    if cls not in ROTATION_NAMES:
        raise CLIInputError("pair.class: expected one of " + ", ".join(sorted(ROTATION_NAMES)))
    rotation = ROTATION_NAMES[cls]
    c1 = _parse_circle(rotation, doc.get("circle1"), "circle1")
    c2 = _parse_circle(rotation, doc.get("circle2"), "circle2")
    try:
        return BoundaryPair(c1, c2)
    except ValueError as exc:
        raise CLIInputError(f"pair: {exc}") from None


def _descriptor_from_args(args) -> dict:
    cls = args.pair_class
    if cls is None:
        raise CLIInputError("pair.class: missing (use --pair-class or --pair-file)")

    def circle(i: int) -> dict:
        if cls == "elliptic":
            return {"z": getattr(args, f"z{i}"), "r": getattr(args, f"r{i}")}
        if cls == "parabolic":
            return {"a": getattr(args, f"a{i}"), "c": getattr(args, f"c{i}")}
        return {
            "x": getattr(args, f"x{i}"),
            "r": getattr(args, f"r{i}"),
            "side": getattr(args, f"side{i}"),
        }

    return {"class": cls, "circle1": circle(1), "circle2": circle(2)}


def _load_pair(args) -> tuple[BoundaryPair, dict]:
    if args.pair_file:
        try:
            doc = json.loads(Path(args.pair_file).read_text())
        except json.JSONDecodeError as exc:
            raise CLIInputError(f"pair file: invalid JSON ({exc})") from None
    else:
        doc = _descriptor_from_args(args)
    cleaned = {k: v for k, v in doc.items()}
    for key in ("circle1", "circle2"):
        if isinstance(cleaned.get(key), dict):
            cleaned[key] = {k: v for k, v in cleaned[key].items() if v is not None}
    return _pair_from_descriptor(cleaned), cleaned


def _add_pair_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--pair-file", help="JSON pair descriptor (canonical input form)")
    sub.add_argument(
        "--pair-class",
        choices=sorted(ROTATION_NAMES),
        help="rotation class when describing the pair with flags",
    )
    for i in (1, 2):
        sub.add_argument(f"--z{i}", type=float, help=f"elliptic: plane of circle {i}")
        sub.add_argument(f"--x{i}", type=float, help=f"hyperbolic: plane of circle {i}")
        sub.add_argument(f"--r{i}", type=float, help=f"radius of circle {i}")
        sub.add_argument(f"--side{i}", type=int, default=1, help=f"branch side of circle {i}")
        sub.add_argument(f"--a{i}", type=float, help=f"parabolic: anchor a of circle {i}")
        sub.add_argument(f"--c{i}", type=float, help=f"parabolic: anchor c of circle {i}")


def _cell_payload(result: CellResult) -> dict:
    payload: dict = {"status": result.status}
    if result.note:
        payload["note"] = result.note
    if result.solution_set is not None:
        payload["solution_set"] = to_jsonable(result.solution_set)
    return payload


def cmd_count(args) -> int:
    pair, descriptor = _load_pair(args)
    table = count_all(pair)
    _emit(
        {
            "pair": descriptor,
            "cells": {cell: _cell_payload(res) for cell, res in table.items()},
            "tolerances": TOLERANCES,
        }
    )
    return 0


def cmd_constants(args) -> int:
    constants = critical_constants()
    _emit({"constants": to_jsonable(constants), "tolerances": TOLERANCES})
    return 0


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise CLIInputError("steps: must be at least 2")
    if not (0.0 < args.h_lo < args.h_hi):
        raise CLIInputError("h-lo/h-hi: need 0 < h-lo < h-hi")
    if args.r <= 0.0:
        raise CLIInputError("r: must be positive")
    series = sweep_N(args.r, args.h_lo, args.h_hi, args.steps, cell=args.cell)
    export_table(series, args.out, fmt="csv")
    final = series[-1]
    sys.stdout.write(
        f"sweep {args.cell}: {args.steps} points on [{args.h_lo}, {args.h_hi}], "
        f"N({final.h:g}) = {final.deduped_count} (raw {final.raw_count}) -> {args.out}\n"
    )
    return 0


def _spec_from_flags(args) -> CatenoidSpec:
    rotation = ROTATION_NAMES[args.rotation]
    causal = CAUSAL_NAMES[args.causal]
    family = FAMILY_NAMES[args.family]
    try:
        profile = ProfileCurve(family, a=args.a, b=args.b)
        return CatenoidSpec(rotation=rotation, causal=causal, profile=profile)
    except InadmissibleCellError as exc:
        raise CLIInputError(f"inadmissible cell: {exc}") from None
    except ValueError as exc:
        raise CLIInputError(str(exc)) from None


def _mesh_one(
    spec: CatenoidSpec, s_range, args, out_dir: Path, name: str, x_reflected: bool = False
) -> tuple[Path, float]:
    mesh = tessellate(spec, s_range, default_t_range(spec), args.ns, args.nt)
    if x_reflected:
        mesh = reflect_mesh_x(mesh)
    path = out_dir / f"{name}.obj"
    export_obj(mesh, path)
    return path, mesh.max_residual


def cmd_mesh(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.rotation or args.family:
        if not (args.rotation and args.causal and args.family and args.a is not None):
            raise CLIInputError("explicit spec needs --rotation, --causal, --family and --a")
        spec = _spec_from_flags(args)
        path, res = _mesh_one(spec, (args.s_lo, args.s_hi), args, out_dir, "catenoid")
        sys.stdout.write(f"{path} max_residual={res:.3e}\n")
        return 0

    pair, _ = _load_pair(args)
    table = count_all(pair)
    written = 0
    for cell, result in table.items():
        if args.cell and cell != args.cell:
            continue
        if result.status != "counted" or result.solution_set is None:
            continue
        sset = result.solution_set
        bounds = sset.diagnostics.get("boundary", {}).get("s")
        if bounds is None:
            continue
        # a reflected solve frame means the literal spanning surface is the
        # x-mirror of the parametrized one
        reflected = bool(sset.diagnostics.get("frame", {}).get("x_reflected", False))
        for idx, spec in enumerate(sset.solutions):
            tag = f"{cell}_{spec.subfamily}_{idx}" if spec.subfamily else f"{cell}_{idx}"
            path, res = _mesh_one(spec, tuple(bounds), args, out_dir, tag, x_reflected=reflected)
            sys.stdout.write(f"{path} max_residual={res:.3e}\n")
            written += 1
    if written == 0:
        sys.stdout.write("no catenoid spans this pair; nothing to mesh\n")
    return 0


def _verify_profile(args):
    if args.family == "euclidean-cosh":
        a, b = args.a, args.b

        def jet(s):
            s = np.asarray(s, dtype=float)
            u = a * s + b
            return np.cosh(u), a * np.sinh(u), a * a * np.cosh(u)

        return None, jet
    spec = _spec_from_flags(args)
    return spec, None


def cmd_verify(args) -> int:
    rotation = ROTATION_NAMES[args.rotation]
    causal = CAUSAL_NAMES[args.causal]
    spec, raw_jet = _verify_profile(args)

    s = np.linspace(args.s_lo, args.s_hi, 41)
    if spec is not None:
        s = s[regular_mask(spec, s, margin=1e-3)]
        if s.size == 0:
            raise CLIInputError("sample range lies inside the singular exclusion zone")
    if rotation is RotationClass.ELLIPTIC:
        t = np.linspace(0.0, 2.0 * math.pi, 17, endpoint=False)
    else:
        t = np.linspace(-1.5, 1.5, 17)
    ss, tt = s[:, None], t[None, :]
    if spec is not None:
        res = mean_curvature_residual(spec, ss, tt)
        disc = metric_discriminant(spec, ss, tt)
    else:
        res = mean_curvature_residual(rotation, ss, tt, profile=raw_jet)
        disc = metric_discriminant(rotation, ss, tt, profile=raw_jet)
    want = 1.0 if causal is CausalCharacter.SPACELIKE else -1.0
    sign_ok = bool(np.all(np.sign(disc) == want))
    max_res = float(np.max(np.abs(res)))
    mean_res = float(np.mean(np.abs(res)))
    ok = max_res < args.tolerance and sign_ok

    obj_deviation = None
    if args.obj:
        vertices, _, _ = parse_obj(args.obj)
        if spec is None:
            raise CLIInputError("--obj verification needs a profile family from the table")
        mesh = tessellate(spec, (args.s_lo, args.s_hi), default_t_range(spec), args.ns, args.nt)
        if mesh.vertices.shape != vertices.shape:
            raise CLIInputError("--obj grid does not match the requested tessellation")
        obj_deviation = float(np.max(np.abs(mesh.vertices - vertices)))
        ok = ok and obj_deviation < 1e-8 * (1.0 + float(np.max(np.abs(vertices))))

    payload = {
        "verdict": "PASS" if ok else "FAIL",
        "max_residual": max_res,
        "mean_residual": mean_res,
        "discriminant_sign_matches": sign_ok,
        "samples": int(res.size),
        "tolerances": {**TOLERANCES, "residual_tol": args.tolerance},
    }
    if obj_deviation is not None:
        payload["obj_max_deviation"] = obj_deviation
    _emit(payload)
    return 0 if ok else 1


def cmd_report(args) -> int:
    from .plots import render_profile_figure, render_sweep_figure

    if args.steps < 2:
        raise CLIInputError("steps: must be at least 2")
    if not (0.0 < args.h_lo < args.h_hi):
        raise CLIInputError("h-lo/h-hi: need 0 < h-lo < h-hi")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    series = sweep_N(args.r, args.h_lo, args.h_hi, args.steps, cell=args.cell)
    csv_path = out_dir / f"sweep_{args.cell}.csv"
    export_table(series, csv_path, fmt="csv")
    counts_png = out_dir / f"counts_{args.cell}.png"
    render_sweep_figure(series, counts_png, cell=args.cell)

    h_show = args.profiles_at if args.profiles_at is not None else args.h_hi
    from .counting import count_spacelike_hyperbolic_II, count_timelike_elliptic

    counter = count_timelike_elliptic if args.cell == "TE" else count_spacelike_hyperbolic_II
    sset = counter(args.r, h_show)
    profiles_png = out_dir / f"profiles_{args.cell}.png"
    render_profile_figure(
        sset,
        -h_show,
        h_show,
        profiles_png,
        targets=[(-h_show, args.r), (h_show, args.r)],
    )
    sys.stdout.write(
        f"report: {csv_path}\n"
        f"report: {counts_png}\n"
        f"report: {profiles_png} (h = {h_show:g}, N = {sset.deduped_count})\n"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorcat",
        description="catenoids spanning coaxial circles in Lorentz-Minkowski 3-space",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="count catenoids spanning a boundary pair")
    _add_pair_flags(p_count)
    p_count.set_defaults(func=cmd_count)

    p_const = sub.add_parser("constants", help="critical constants with solver residuals")
    p_const.set_defaults(func=cmd_constants)

    p_sweep = sub.add_parser("sweep", help="count over a separation grid, write CSV")
    p_sweep.add_argument("--cell", choices=["TE", "HIIs"], default="TE")
    p_sweep.add_argument("--r", type=float, required=True)
    p_sweep.add_argument("--h-lo", type=float, required=True)
    p_sweep.add_argument("--h-hi", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_mesh = sub.add_parser("mesh", help="tessellate solutions to OBJ files")
    _add_pair_flags(p_mesh)
    p_mesh.add_argument(
        "--cell",
        choices=["SE", "TE", "HI", "HIIt", "HIIs", "PAs", "PAt"],
        help="mesh only this cell of the counting table",
    )
    p_mesh.add_argument("--rotation", choices=sorted(ROTATION_NAMES))
    p_mesh.add_argument("--causal", choices=sorted(CAUSAL_NAMES))
    p_mesh.add_argument("--family", choices=sorted(FAMILY_NAMES))
    p_mesh.add_argument("--a", type=float)
    p_mesh.add_argument("--b", type=float, default=0.0)
    p_mesh.add_argument("--s-lo", type=float, default=-2.0)
    p_mesh.add_argument("--s-hi", type=float, default=2.0)
    p_mesh.add_argument("--ns", type=int, default=40)
    p_mesh.add_argument("--nt", type=int, default=40)
    p_mesh.add_argument("--out", required=True, help="output directory")
    p_mesh.set_defaults(func=cmd_mesh)

    p_verify = sub.add_parser("verify", help="residual report for a catenoid spec")
    p_verify.add_argument("--rotation", choices=sorted(ROTATION_NAMES), required=True)
    p_verify.add_argument("--causal", choices=sorted(CAUSAL_NAMES), required=True)
    p_verify.add_argument(
        "--family", choices=sorted(FAMILY_NAMES) + ["euclidean-cosh"], required=True
    )
    p_verify.add_argument("--a", type=float, required=True)
    p_verify.add_argument("--b", type=float, default=0.0)
    p_verify.add_argument("--s-lo", type=float, default=-2.0)
    p_verify.add_argument("--s-hi", type=float, default=2.0)
    p_verify.add_argument("--ns", type=int, default=40)
    p_verify.add_argument("--nt", type=int, default=40)
    p_verify.add_argument("--tolerance", type=float, default=1e-9)
    p_verify.add_argument("--obj", help="previously exported OBJ to check against")
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser("report", help="sweep CSV plus rendered figures")
    p_report.add_argument("--cell", choices=["TE", "HIIs"], default="TE")
    p_report.add_argument("--r", type=float, required=True)
    p_report.add_argument("--h-lo", type=float, required=True)
    p_report.add_argument("--h-hi", type=float, required=True)
    p_report.add_argument("--steps", type=int, required=True)
    p_report.add_argument("--profiles-at", type=float, default=None)
    p_report.add_argument("--out", required=True, help="output directory")
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InadmissibleCellError as exc:
        print(f"error: inadmissible cell: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure contract
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
