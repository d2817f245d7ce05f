"""Grid sampling of surfaces into masked quad meshes, and OBJ/PLY/CSV export."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, EmptyMeshError, ExportError, SingularityError
from .surfaces import SurfaceModel, safe_evaluate


@dataclass(frozen=True)
class GridSpec:
    """Rectangle ``[u_min, u_max] x [v_min, v_max]`` sampled at ``nu x nv`` nodes (z = u + iv)."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float
    nu: int
    nv: int

    def __post_init__(self):
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise DomainError(f"empty parameter rectangle {self}")
        if self.nu < 2 or self.nv < 2:
            raise DomainError("a grid needs at least 2 samples per direction")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """From ``"u0,u1,v0,v1,nu,nv"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise DomainError(f"grid needs u0,u1,v0,v1,nu,nv; got {text!r}")
        u0, u1, v0, v1 = map(float, parts[:4])
        return cls(u0, u1, v0, v1, int(parts[4]), int(parts[5]))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.u_min, self.u_max, self.nu),
                np.linspace(self.v_min, self.v_max, self.nv))

    def nodes(self) -> np.ndarray:
        """Complex nodes, shape ``(nv, nu)``; row ``j`` has ``Im = v_j``."""
        us, vs = self.axes()
        return us[None, :] + 1j * vs[:, None]


@dataclass
class Mesh:
    """Quad mesh over a parameter grid.

    ``vertices`` holds only valid nodes (row-major over the grid);
    ``node_index`` maps grid nodes to vertex rows, -1 where masked.
    """

    vertices: np.ndarray
    quads: np.ndarray
    mask: np.ndarray
    node_index: np.ndarray
    params: np.ndarray
    scalars: np.ndarray | None = None
    name: str = ""

    @property
    def masked_count(self) -> int:
        return int((~self.mask).sum())


@dataclass
class CurveSamples:
    t: np.ndarray
    points: np.ndarray
    axis: str
    name: str = ""


def _quads_from_mask(node_index: np.ndarray) -> np.ndarray:
    a = node_index[:-1, :-1]
    b = node_index[:-1, 1:]
    c = node_index[1:, 1:]
    d = node_index[1:, :-1]
    q = np.stack([a, b, c, d], axis=-1).reshape(-1, 4)
    return q[np.all(q >= 0, axis=1)]


def sample_grid(surface: SurfaceModel, grid: GridSpec, with_curvature: bool = False,
                step: float = 1e-4) -> Mesh:
    """Evaluate ``surface`` on every grid node; singular nodes are masked, not fatal.

    Quads are emitted only for cells whose four corners are valid.  With
    ``with_curvature`` the per-vertex ``|H|`` becomes the scalar channel.
    """
    z = grid.nodes()
    if surface.grid_immersion is not None:
        w = surface.grid_immersion(*grid.axes())
        pts = w.imag if surface.conjugate else w.real
        valid = np.all(np.isfinite(w), axis=-1)
    else:
        pts, valid = safe_evaluate(surface, z)
    if not valid.any():
        raise EmptyMeshError(f"no valid node for {surface.name} on {grid}")
    node_index = np.full(valid.shape, -1, dtype=np.int64)
    node_index[valid] = np.arange(int(valid.sum()))
    mesh = Mesh(pts[valid], _quads_from_mask(node_index), valid, node_index, z[valid],
                name=surface.name)
    if with_curvature:
        mesh.scalars = vertex_mean_curvature(surface, mesh.params, step)
    return mesh


def vertex_mean_curvature(surface: SurfaceModel, params: np.ndarray, step: float = 1e-4) -> np.ndarray:
    """``|H|`` at each parameter; NaN where the stencil is singular or degenerate."""
    from .geometry import _forms

    out = np.full(params.shape, np.nan)
    try:
        h = np.abs(np.asarray(_forms(surface, params, step).mean_curvature))
        return np.where(np.isfinite(h), h, np.nan)
    except SingularityError:
        pass
    for i, u in enumerate(params):
        try:
            out[i] = abs(float(_forms(surface, u, step).mean_curvature))
        except SingularityError:
            continue
    return out


def sample_curve(surface: SurfaceModel, axis: str, t_min: float, t_max: float, n: int) -> CurveSamples:
    """``n`` samples of the real-axis (generator) or imaginary-axis (dual) curve."""
    if n < 2:
        raise DomainError("a curve needs at least 2 samples")
    t = np.linspace(t_min, t_max, n)
    if axis == "real":
        u = t + 0j
    elif axis == "imaginary":
        u = 1j * t
    else:
        raise DomainError(f"axis must be 'real' or 'imaginary', got {axis!r}")
    return CurveSamples(t, surface.evaluate(u), axis, surface.name)


# ---------------------------------------------------------------------------
# export

def _fmt(x: float) -> str:
    # adding 0.0 folds -0.0 into 0.0
    return repr(float(x) + 0.0)


def _write(path, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc


def obj_text(mesh: Mesh) -> str:
    lines = [f"# {mesh.name}" if mesh.name else "# mesh"]
    lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
    lines += ["f " + " ".join(str(int(i) + 1) for i in q) for q in mesh.quads]
    return "\n".join(lines) + "\n"


def export_obj(mesh: Mesh, path) -> None:
    """ASCII Wavefront OBJ: ``v x y z`` lines then 1-based ``f i j k l`` lines."""
    _write(path, obj_text(mesh))


def ply_text(mesh: Mesh) -> str:
    has_q = mesh.scalars is not None
    header = [
        "ply",
        "format ascii 1.0",
        f"comment {mesh.name}" if mesh.name else "comment mesh",
        f"element vertex {len(mesh.vertices)}",
        "property float x",
        "property float y",
        "property float z",
    ]
    if has_q:
        header.append("property float quality")
    header += [f"element face {len(mesh.quads)}", "property list uchar int vertex_indices", "end_header"]
    body = []
    for i, (x, y, z) in enumerate(mesh.vertices):
        row = f"{_fmt(x)} {_fmt(y)} {_fmt(z)}"
        if has_q:
            row += f" {_fmt(mesh.scalars[i])}"
        body.append(row)
    body += ["4 " + " ".join(str(int(i)) for i in q) for q in mesh.quads]
    return "\n".join(header + body) + "\n"


def export_ply(mesh: Mesh, path) -> None:
    """ASCII PLY 1.0 with x/y/z (and optional ``quality``) and quad faces."""
    _write(path, ply_text(mesh))


def csv_text(curve: CurveSamples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "y", "z"])
    for t, p in zip(curve.t, curve.points):
        w.writerow([_fmt(t), _fmt(p[0]), _fmt(p[1]), _fmt(p[2])])
    return buf.getvalue()


def export_csv(curve: CurveSamples, path) -> None:
    """CSV with header ``t,x,y,z``; values written with round-trip precision."""
    _write(path, csv_text(curve))


def read_obj(path) -> tuple[np.ndarray, np.ndarray]:
    """Vertices and (0-based) quads of an OBJ written by :func:`export_obj`."""
    verts, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:]])
    v = np.array(verts, dtype=float).reshape(-1, 3)
    f = np.array(faces, dtype=np.int64).reshape(-1, 4) if faces else np.zeros((0, 4), dtype=np.int64)
    return v, f


def mesh_from_obj(path) -> Mesh:
    v, f = read_obj(path)
    n = len(v)
    return Mesh(v, f, np.ones(n, dtype=bool), np.arange(n), np.full(n, math.nan + 0j),
                name=Path(path).stem)
