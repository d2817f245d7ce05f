"""Finite-difference differential geometry for certifying the surfaces.

Mean curvature, geodesic curvature of the axis curves, conjugate isometry,
the branch jump of naive path integrals and a sharp-edge detector on meshes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .curves import PlaneCurveSpec, path_integral
from .errors import DegenerateImmersionError, DomainError, SingularityError
from .surfaces import SurfaceModel

DEFAULT_STEP = 1e-4
SHARP_EDGE_DEGREES = 10.0
SMOOTH_DEGREES = 1.0
_DEGENERATE = 1e-14

_OFFSETS = np.array([0, 1, -1, 1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])


@dataclass(frozen=True)
class FundamentalForms:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    N: np.ndarray
    at: complex | np.ndarray
    step: float
    normal: np.ndarray | None = None

    @property
    def determinant(self):
        return self.E * self.G - self.F ** 2

    @property
    def mean_curvature(self):
        return (self.E * self.N - 2 * self.F * self.M + self.G * self.L) / (2 * self.determinant)

    @property
    def gaussian_curvature(self):
        return (self.L * self.N - self.M ** 2) / self.determinant


def _forms(surface: SurfaceModel, u, step: float) -> FundamentalForms:
    u = np.asarray(u, dtype=complex)
    f = surface.evaluate(u[..., None] + step * _OFFSETS)
    f0, fp, fm, fi, fj = (f[..., i, :] for i in range(5))
    ru = (fp - fm) / (2 * step)
    rv = (fi - fj) / (2 * step)
    ruu = (fp - 2 * f0 + fm) / step ** 2
    rvv = (fi - 2 * f0 + fj) / step ** 2
    ruv = (f[..., 5, :] - f[..., 6, :] - f[..., 7, :] + f[..., 8, :]) / (4 * step ** 2)
    n = np.cross(ru, rv)
    with np.errstate(invalid="ignore", divide="ignore"):
        n = n / np.linalg.norm(n, axis=-1, keepdims=True)

    def dot(p, q):
        return np.sum(p * q, axis=-1)

    return FundamentalForms(dot(ru, ru), dot(ru, rv), dot(rv, rv),
                            dot(ruu, n), dot(ruv, n), dot(rvv, n), u, step, n)


def fundamental_forms(surface: SurfaceModel, u, step: float = DEFAULT_STEP) -> FundamentalForms:
    """First and second fundamental forms by central differences at ``u``.

    Raises :class:`DegenerateImmersionError` where ``EG - F^2 < 1e-14``.
    """
    if step <= 0:
        raise DomainError("finite-difference step must be positive")
    ff = _forms(surface, u, step)
    det = np.asarray(ff.determinant)
    if np.any(~(det >= _DEGENERATE)):
        raise DegenerateImmersionError(f"EG - F^2 = {np.nanmin(det):.3e} at {u} on {surface.name}")
    return ff


def mean_curvature(surface: SurfaceModel, u, step: float = DEFAULT_STEP):
    """``H = (EN - 2FM + GL) / (2(EG - F^2))``; sign follows the arbitrary normal."""
    h = fundamental_forms(surface, u, step).mean_curvature
    return h.item() if np.ndim(h) == 0 else h


def _axis_point(axis: str, t):
    if axis == "real":
        return np.asarray(t, dtype=float) + 0j
    if axis == "imaginary":
        return 1j * np.asarray(t, dtype=float)
    raise DomainError(f"axis must be 'real' or 'imaginary', got {axis!r}")


def geodesic_curvature(surface: SurfaceModel, axis: str, t, step: float = DEFAULT_STEP):
    """Geodesic curvature of the curve ``t -> surface(t)`` (or ``surface(i t)``)."""
    u = _axis_point(axis, t)
    direction = 1.0 if axis == "real" else 1j
    ff = fundamental_forms(surface, u, step)
    g = surface.evaluate(u[..., None] + step * direction * np.array([0, 1, -1]))
    d1 = (g[..., 1, :] - g[..., 2, :]) / (2 * step)
    d2 = (g[..., 1, :] - 2 * g[..., 0, :] + g[..., 2, :]) / step ** 2
    binormal = np.cross(ff.normal, d1)
    kg = np.abs(np.sum(d2 * binormal, axis=-1)) / np.linalg.norm(d1, axis=-1) ** 3
    return kg.item() if np.ndim(kg) == 0 else kg


def interior_grid(domain: Sequence[float], n: int = 20, shrink: float = 1.0) -> np.ndarray:
    """Cell-centred ``n x n`` parameter grid inside ``domain``; never touches the axes for even n."""
    u0, u1, v0, v1 = domain
    cu, cv = 0.5 * (u0 + u1), 0.5 * (v0 + v1)
    hu, hv = 0.5 * (u1 - u0) * shrink, 0.5 * (v1 - v0) * shrink
    s = (np.arange(n) + 0.5) / n * 2 - 1
    return (cu + hu * s)[None, :] + 1j * (cv + hv * s)[:, None]


def _usable(surface: SurfaceModel, u: np.ndarray, step: float):
    """Forms at every usable node plus the usable mask (pole-free stencil, non-degenerate)."""
    u = np.asarray(u, dtype=complex)
    ok = np.ones(u.shape, dtype=bool)
    for off in 2 * step * _OFFSETS:
        ok &= ~surface.singular_mask(u + off)
    vals = {}
    if surface.vectorized:
        if ok.any():
            vals = {"idx": np.nonzero(ok), "ff": _forms(surface, u[ok], step)}
    else:
        idx, forms = [], []
        for i in zip(*np.nonzero(ok)):
            try:
                forms.append(_forms(surface, u[i], step))
                idx.append(i)
            except SingularityError:
                ok[i] = False
        if idx:
            vals = {"idx": tuple(np.array(c) for c in zip(*idx)),
                    "ff": FundamentalForms(*(np.array([getattr(f, k) for f in forms])
                                             for k in "EFGLMN"), u[ok], step)}
    out = {}
    if vals:
        ff = vals["ff"]
        good = np.asarray(ff.determinant >= _DEGENERATE) & np.isfinite(ff.mean_curvature)
        full = np.zeros(u.shape, dtype=bool)
        full[vals["idx"]] = good
        ok = full
        out = {k: np.asarray(getattr(ff, k))[good] for k in "EFGLMN"}
        out["H"] = np.asarray(ff.mean_curvature)[good]
    else:
        ok[:] = False
    return out, ok


def max_abs_mean_curvature(surface: SurfaceModel, u, step: float = DEFAULT_STEP) -> tuple[float, int, int]:
    """``(max |H|, usable samples, masked samples)`` over the parameter array ``u``."""
    vals, ok = _usable(surface, u, step)
    if not ok.any():
        return math.nan, 0, int(ok.size)
    return float(np.max(np.abs(vals["H"]))), int(ok.sum()), int(ok.size - ok.sum())


def conjugate_isometry_check(surface: SurfaceModel, region: Sequence[float] | None = None,
                             step: float = DEFAULT_STEP, n: int = 10) -> float:
    """Max relative first-form mismatch between a surface and its conjugate.

    ``(|dE| + |dF| + |dG|) / ((E + G)/2)`` over an ``n x n`` grid in ``region``.
    """
    region = surface.recommended_domain if region is None else region
    u = interior_grid(region, n, shrink=0.9)
    a, ok_a = _usable(surface, u, step)
    b, ok_b = _usable(surface.conjugated(), u, step)
    if not ok_a.any() or not np.array_equal(ok_a, ok_b):
        raise DomainError("isometry region must be usable for both surfaces")
    scale = 0.5 * (a["E"] + a["G"])
    res = (np.abs(a["E"] - b["E"]) + np.abs(a["F"] - b["F"]) + np.abs(a["G"] - b["G"])) / scale
    return float(res.max())


def branch_discrepancy(curve: PlaneCurveSpec, endpoint: complex, path_a: Sequence[complex],
                       path_b: Sequence[complex]) -> tuple[float, float]:
    """Real and imaginary parts of ``int_A speed - int_B speed`` for two paths to ``endpoint``."""
    for path in (path_a, path_b):
        if abs(complex(path[-1]) - complex(endpoint)) > 1e-14:
            raise DomainError("both paths must end at the endpoint")
    d = path_integral(curve, path_a) - path_integral(curve, path_b)
    return float(d.real), float(d.imag)


def facet_normals(vertices: np.ndarray, quads: np.ndarray) -> np.ndarray:
    """Unit quad normals from the cross product of the diagonals (NaN if degenerate)."""
    v = np.asarray(vertices, dtype=float)[np.asarray(quads, dtype=int)]
    n = np.cross(v[:, 2] - v[:, 0], v[:, 3] - v[:, 1])
    norm = np.linalg.norm(n, axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(norm > 0, n / norm, np.nan)


def adjacent_normal_angles(vertices: np.ndarray, quads: np.ndarray) -> np.ndarray:
    """Angles (degrees) between normals of every pair of quads sharing an edge."""
    quads = np.asarray(quads, dtype=int)
    if len(quads) < 2:
        return np.zeros(0)
    normals = facet_normals(vertices, quads)
    edges = np.stack([quads, np.roll(quads, -1, axis=1)], axis=-1).reshape(-1, 2)
    edges = np.sort(edges, axis=1)
    owner = np.repeat(np.arange(len(quads)), 4)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    edges, owner = edges[order], owner[order]
    same = np.all(edges[1:] == edges[:-1], axis=1)
    a, b = owner[:-1][same], owner[1:][same]
    cos = np.clip(np.sum(normals[a] * normals[b], axis=1), -1.0, 1.0)
    ang = np.degrees(np.arccos(cos))
    return ang[np.isfinite(ang)]


def max_normal_angle(mesh) -> float:
    """Largest angle (degrees) between adjacent facet normals of a quad mesh."""
    ang = adjacent_normal_angles(mesh.vertices, mesh.quads)
    return float(ang.max()) if ang.size else 0.0


def sharp_edge(mesh, threshold: float = SHARP_EDGE_DEGREES) -> bool:
    """True when some adjacent facets meet at more than ``threshold`` degrees."""
    return max_normal_angle(mesh) > threshold


@dataclass
class VerificationReport:
    surface: str
    max_abs_H: float
    max_geodesic_curvature: float
    isometry_residual: float
    max_normal_angle_deg: float
    sharp_edge: bool
    samples: int
    masked: int
    grid: str
    step: float

    def passed(self, tol: float) -> bool:
        return bool(self.max_abs_H <= tol) and not self.sharp_edge

    def to_keyvalue(self) -> str:
        lines = []
        for key, val in asdict(self).items():
            if isinstance(val, bool):
                val = str(val).lower()
            elif isinstance(val, float):
                val = repr(val)
            lines.append(f"{key}={val}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        return (
            f"surface            {self.surface}\n"
            f"grid               {self.grid} (step {self.step:g})\n"
            f"samples            {self.samples} used, {self.masked} masked\n"
            f"max |H|            {self.max_abs_H:.3e}\n"
            f"max geodesic curv  {self.max_geodesic_curvature:.3e}\n"
            f"isometry residual  {self.isometry_residual:.3e}\n"
            f"max facet angle    {self.max_normal_angle_deg:.3f} deg"
            f"{'  SHARP EDGE' if self.sharp_edge else ''}\n"
        )


def axis_geodesic_curvature(surface: SurfaceModel, n: int = 9, step: float = DEFAULT_STEP) -> float:
    """Max geodesic curvature of the real- and imaginary-axis curves inside the domain."""
    u0, u1, v0, v1 = surface.recommended_domain
    worst = 0.0
    for axis, lo, hi in (("real", u0, u1), ("imaginary", v0, v1)):
        if not (lo < 0 < hi):
            continue
        for t in np.linspace(lo, hi, n + 2)[1:-1] * 0.97:
            try:
                kg = geodesic_curvature(surface, axis, t, step)
            except (SingularityError, DegenerateImmersionError):
                continue
            if np.isfinite(kg):
                worst = max(worst, float(kg))
    return worst


def verify_surface(surface: SurfaceModel, grid=None, step: float = DEFAULT_STEP, n: int = 20,
                   edge_grid=None) -> VerificationReport:
    """Run every check on ``surface`` and collect a :class:`VerificationReport`.

    Mean curvature uses ``grid`` (a GridSpec) or an ``n x n`` interior grid;
    the sharp-edge detector samples ``edge_grid`` (default: the recommended
    domain at 201 x 201 nodes).
    """
    from .mesh import GridSpec, sample_grid

    if grid is None:
        u = interior_grid(surface.recommended_domain, n)
        shape = f"{n}x{n} interior"
    else:
        u = grid.nodes()
        shape = f"{grid.nu}x{grid.nv}"
    hmax, used, masked = max_abs_mean_curvature(surface, u, step)
    kg = axis_geodesic_curvature(surface, step=step)
    try:
        iso = conjugate_isometry_check(surface, step=step, n=6)
    except DomainError:
        iso = math.nan
    if edge_grid is None:
        edge_grid = GridSpec(*surface.recommended_domain, 201, 201)
    angle = max_normal_angle(sample_grid(surface, edge_grid))
    return VerificationReport(surface.name, hmax, kg, iso, angle, angle > SHARP_EDGE_DEGREES,
                              used, masked, shape, step)
