"""Command line: ``bjorling surface|curve|verify|compare``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import curves
from .errors import BjorlingError, DomainError
from .geometry import (
    SHARP_EDGE_DEGREES,
    VerificationReport,
    branch_discrepancy,
    max_normal_angle,
    verify_surface,
)
from .mesh import (
    GridSpec,
    csv_text,
    export_csv,
    export_obj,
    export_ply,
    mesh_from_obj,
    obj_text,
    sample_curve,
    sample_grid,
)
from .surfaces import SURFACE_NAMES, build_surface


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected t0,t1, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _surface_args(p: argparse.ArgumentParser, name_required: bool = True) -> None:
    p.add_argument("name", choices=SURFACE_NAMES, nargs=None if name_required else "?")
    p.add_argument("--a", type=float, default=None, help="semi-axis a (default 2 ellipse, 1 hyperbola)")
    p.add_argument("--b", type=float, default=None, help="semi-axis b (default 1)")
    p.add_argument("--conjugate", action="store_true", help="take Im instead of Re")
    p.add_argument("--naive", action="store_true",
                   help="integrate the generic formula along grid paths (shows the branch-cut artifacts)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bjorling", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", help="sample a surface and write OBJ or PLY")
    _surface_args(p)
    p.add_argument("--grid", type=_grid, default=None, help="u0,u1,v0,v1,nu,nv")
    p.add_argument("--out", default=None, help="*.obj or *.ply (default: OBJ on stdout)")
    p.add_argument("--with-curvature", action="store_true", help="add |H| as PLY quality channel")

    p = sub.add_parser("curve", help="sample the real-axis or imaginary-axis curve to CSV")
    _surface_args(p)
    p.add_argument("--axis", choices=("real", "imaginary"), default="real")
    p.add_argument("--range", type=_pair, default=None, dest="trange", help="t0,t1")
    p.add_argument("--n", type=int, default=101)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")

    p = sub.add_parser("verify", help="check minimality, geodesics, isometry and sharp edges")
    _surface_args(p, name_required=False)
    p.add_argument("--mesh", default=None, help="run the sharp-edge detector on an OBJ file")
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--grid", type=_grid, default=None, help="grid for |H| (default 20x20 interior)")
    p.add_argument("--edge-grid", type=_grid, default=None,
                   help="grid for the sharp-edge detector (default 101x101 over the domain)")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("compare", help="print the branch jump of two-path integrals")
    p.add_argument("name", choices=("catalan", "parabola", "elliptical-catenoid"))
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    return parser


def _cmd_surface(args) -> int:
    surface = build_surface(args.name, args.a, args.b, args.conjugate, args.naive)
    grid = args.grid or GridSpec(*surface.recommended_domain, 64, 64)
    mesh = sample_grid(surface, grid, with_curvature=args.with_curvature)
    if args.out is None:
        sys.stdout.write(obj_text(mesh))
        return 0
    if args.out.lower().endswith(".ply"):
        export_ply(mesh, args.out)
    else:
        export_obj(mesh, args.out)
    print(f"{surface.name}: {len(mesh.vertices)} vertices, {len(mesh.quads)} quads, "
          f"{mesh.masked_count} masked -> {args.out}")
    return 0


def _cmd_curve(args) -> int:
    surface = build_surface(args.name, args.a, args.b, args.conjugate, args.naive)
    if args.trange is None:
        u0, u1, v0, v1 = surface.recommended_domain
        args.trange = (u0, u1) if args.axis == "real" else (v0, v1)
    samples = sample_curve(surface, args.axis, args.trange[0], args.trange[1], args.n)
    if args.out is None:
        sys.stdout.write(csv_text(samples))
    else:
        export_csv(samples, args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.mesh:
        mesh = mesh_from_obj(args.mesh)
        angle = max_normal_angle(mesh)
        report = VerificationReport(mesh.name, math.nan, math.nan, math.nan, angle,
                                    angle > SHARP_EDGE_DEGREES, len(mesh.vertices), 0,
                                    f"{len(mesh.quads)} quads from {args.mesh}", args.step)
        ok = not report.sharp_edge
    else:
        if args.name is None:
            raise DomainError("verify needs a surface name or --mesh")
        surface = build_surface(args.name, args.a, args.b, args.conjugate, args.naive)
        edge = args.edge_grid or GridSpec(*surface.recommended_domain, 101, 101)
        report = verify_surface(surface, args.grid, args.step, edge_grid=edge)
        ok = report.passed(args.tol)
    sys.stdout.write(report.to_keyvalue() if args.format == "kv" else report.to_text())
    print(f"result={'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_compare(args) -> int:
    if args.name in ("catalan", "parabola"):
        curve = curves.parabola_curve()
        bp = 1j
    else:
        curve = curves.ellipse_curve(args.a, args.b)
        bp = complex(math.pi / 2, math.acosh(1.0 / curve.params["e"]))
    print(f"# {curve.name}: paths passing left / right of the branch point {bp:.12g}")
    print(f"{'endpoint':>24} {'delta_re':>22} {'delta_im':>22}")
    for lift in (0.5, 1.0, 2.0):
        end = complex(bp.real, bp.imag + lift)
        mid = complex(bp.real, 0.5 * bp.imag)
        left = [0j, mid - 0.5, complex(bp.real - 0.5, bp.imag + lift / 2), end]
        right = [0j, mid + 0.5, complex(bp.real + 0.5, bp.imag + lift / 2), end]
        dre, dim = branch_discrepancy(curve, end, left, right)
        print(f"{end!s:>24} {dre:>22.15g} {dim:>22.15g}")
    return 0


_LIST_FLAGS = ("--range", "--grid", "--edge-grid")


def _glue_list_values(argv: list[str]) -> list[str]:
    """Turn ``--range -1,1`` into ``--range=-1,1`` so argparse accepts leading minus signs."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in _LIST_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_list_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"surface": _cmd_surface, "curve": _cmd_curve,
               "verify": _cmd_verify, "compare": _cmd_compare}[args.command]
    try:
        return handler(args)
    except DomainError as exc:
        print(f"bjorling: error: {exc}", file=sys.stderr)
        return 2
    except BjorlingError as exc:
        print(f"bjorling: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
