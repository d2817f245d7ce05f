"""Plane generator curves and path integration of their (multivalued) speed.

The naive Björling construction integrates ``sqrt(x'(u)^2 + y'(u)^2)`` along a
path in the complex plane.  The square root is continued analytically along
the path, so two paths that wind differently around a branch point give
different answers.  That path dependence is the point: it reproduces the
false edges of a naive plot.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import BranchProximityError, DomainError, QuadratureError

BRANCH_EPSILON = 1e-6
QUAD_TOLERANCE = 1e-10

# max angle between neighbouring tracked samples of the square root
_TRACK_ANGLE = math.pi / 8
# max drift of the continued root inside one quadrature piece
_PIECE_ANGLE = math.pi / 4
_MAX_KNOTS = 20000


@dataclass(frozen=True)
class PlaneCurveSpec:
    """Planar analytic curve ``(x(z), y(z))`` with its speed data.

    ``speed_squared`` must be the single-valued ``x'^2 + y'^2``; the speed
    itself is multivalued and branches at ``branch_points``.
    """

    name: str
    x: Callable[[np.ndarray], np.ndarray]
    y: Callable[[np.ndarray], np.ndarray]
    speed_squared: Callable[[np.ndarray], np.ndarray]
    branch_points: tuple[complex, ...] = ()
    basepoint: complex = 0j
    params: dict = field(default_factory=dict, compare=False)

    def speed(self, z):
        """Principal branch of the speed (positive on the real axis near 0)."""
        return np.sqrt(np.asarray(self.speed_squared(np.asarray(z, dtype=complex)), dtype=complex))


def parabola_curve() -> PlaneCurveSpec:
    """The parabola ``(2t, t^2)``; speed ``2 sqrt(1 + z^2)`` branches at ``+-i``."""
    return PlaneCurveSpec(
        "parabola",
        x=lambda z: 2.0 * z,
        y=lambda z: z * z,
        speed_squared=lambda z: 4.0 * (1.0 + z * z),
        branch_points=(1j, -1j),
    )


def circle_curve(radius: float = 1.0) -> PlaneCurveSpec:
    r = float(radius)
    return PlaneCurveSpec(
        "circle",
        x=lambda z: r * np.cos(z),
        y=lambda z: r * np.sin(z),
        speed_squared=lambda z: np.full(np.shape(z), r * r, dtype=complex),
        params={"radius": r},
    )


def ellipse_eccentricity(a: float, b: float) -> float:
    """Modulus ``sqrt(a^2 - b^2) / a`` of the ellipse ``(b cos t, a sin t)``, ``a >= b > 0``."""
    if not (a >= b > 0):
        raise DomainError(f"ellipse needs a >= b > 0, got a={a!r}, b={b!r}")
    return math.sqrt((a - b) * (a + b)) / a


def ellipse_curve(a: float, b: float, periods: int = 20) -> PlaneCurveSpec:
    """Ellipse ``(b cos t, a sin t)`` with speed ``a sqrt(1 - e^2 sin^2 z)``.

    Branch points ``pi/2 + n pi +- i arccosh(1/e)`` are listed for
    ``|n| <= periods``; paths must stay inside that window.
    """
    e = ellipse_eccentricity(a, b)
    if e == 0.0:
        bps: tuple[complex, ...] = ()
    else:
        beta = math.acosh(1.0 / e)
        bps = tuple(
            complex(math.pi / 2 + n * math.pi, s * beta)
            for n in range(-periods, periods + 1)
            for s in (1.0, -1.0)
        )
    return PlaneCurveSpec(
        "ellipse",
        x=lambda z: b * np.cos(z),
        y=lambda z: a * np.sin(z),
        speed_squared=lambda z: (b * np.sin(z)) ** 2 + (a * np.cos(z)) ** 2,
        branch_points=bps,
        params={"a": a, "b": b, "e": e},
    )


def hyperbola_curve(a: float, b: float, periods: int = 20) -> PlaneCurveSpec:
    """Hyperbola ``(b cosh t, a sinh t)``; branches where ``cosh z = +-b/sqrt(a^2+b^2)``."""
    if not (a > 0 and b > 0):
        raise DomainError(f"hyperbola needs a, b > 0, got a={a!r}, b={b!r}")
    theta = math.acos(b / math.hypot(a, b))
    bps = tuple(
        complex(0.0, s * theta + n * math.pi)
        for n in range(-periods, periods + 1)
        for s in (1.0, -1.0)
    )
    return PlaneCurveSpec(
        "hyperbola",
        x=lambda z: b * np.cosh(z),
        y=lambda z: a * np.sinh(z),
        speed_squared=lambda z: (b * np.sinh(z)) ** 2 + (a * np.cosh(z)) ** 2,
        branch_points=bps,
        params={"a": a, "b": b},
    )


# ---------------------------------------------------------------------------
# paths


def straight_path(start: complex, end: complex) -> list[complex]:
    return [complex(start), complex(end)]


def l_path(start: complex, end: complex) -> list[complex]:
    """Horizontal leg first, then vertical: what a row-by-row plot implicitly does."""
    start, end = complex(start), complex(end)
    corner = complex(end.real, start.imag)
    pts = [start]
    if corner != start:
        pts.append(corner)
    if end != pts[-1]:
        pts.append(end)
    if len(pts) == 1:
        pts.append(end)
    return pts


def around_path(start: complex, end: complex, via: complex) -> list[complex]:
    """Two-leg polyline through ``via``; pick ``via`` to choose a side of a branch point."""
    return [complex(start), complex(via), complex(end)]


def _segment_distance(p: complex, q: complex, c):
    """Distance from point(s) ``c`` to the segment ``[p, q]``."""
    c = np.asarray(c, dtype=complex)
    d = q - p
    if d == 0:
        return np.abs(c - p)
    t = np.clip(((c - p) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    return np.abs(p + t * d - c)


def check_path(curve: PlaneCurveSpec, path: Sequence[complex]) -> None:
    """Raise :class:`BranchProximityError` if any leg comes within ``BRANCH_EPSILON``."""
    if not curve.branch_points:
        return
    bps = np.asarray(curve.branch_points, dtype=complex)
    for p, q in zip(path[:-1], path[1:]):
        dist = _segment_distance(p, q, bps)
        hit = np.nonzero(dist <= BRANCH_EPSILON)[0]
        if hit.size:
            bp = complex(bps[hit[0]])
            raise BranchProximityError(
                f"path leg {p:.6g} -> {q:.6g} passes within {BRANCH_EPSILON:g} "
                f"of the branch point {bp:.12g} of the {curve.name} speed",
                bp,
            )


def detour_path(curve: PlaneCurveSpec, path: Sequence[complex], delta: float = 1e-3) -> list[complex]:
    """Replace legs that hit a branch point by a rectangular detour on their right-hand side.

    Mimics a plotting package that takes a fixed side of each cut.  Endpoints
    on a branch point are left alone (they cannot be evaluated).
    """
    path = [complex(p) for p in path]
    bps = np.asarray(curve.branch_points, dtype=complex)
    out = [path[0]]
    for p, q in zip(path[:-1], path[1:]):
        d = q - p
        hits = []
        if bps.size and d != 0:
            dist = _segment_distance(p, q, bps)
            for bp in bps[dist <= BRANCH_EPSILON]:
                s = ((bp - p) * d.conjugate()).real / abs(d) ** 2
                if delta < s * abs(d) < abs(d) - delta:
                    hits.append((s, complex(bp)))
        unit = d / abs(d) if d != 0 else 0j
        right = -1j * unit * delta
        for s, bp in sorted(hits):
            foot = p + s * d
            out += [foot - unit * delta, foot - unit * delta + right,
                    foot + unit * delta + right, foot + unit * delta]
        out.append(q)
    return out


def _track_segment(curve, p: complex, q: complex, start: complex):
    """Continue the root along ``p -> q`` from ``start``; returns knots and values."""
    d = q - p
    t = np.linspace(0.0, 1.0, 33)
    while True:
        roots = curve.speed(p + t * d)
        # sign flips chain multiplicatively from the known root at p
        prevs = np.concatenate([[start], roots[:-1]])
        tracked = roots * np.cumprod(np.where((roots * np.conj(prevs)).real >= 0, 1.0, -1.0))
        ang = np.abs(np.angle(tracked[1:] / tracked[:-1]))
        ang[~np.isfinite(ang)] = 0.0
        bad = ang > _TRACK_ANGLE
        if not bad.any():
            return t, tracked
        if len(t) > _MAX_KNOTS:
            raise QuadratureError(f"cannot resolve branch of {curve.name} speed on {p} -> {q}")
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        t = np.sort(np.concatenate([t, mids]))


def _pieces(t: np.ndarray, tracked: np.ndarray):
    """Group knots into intervals on which the root drifts less than ``_PIECE_ANGLE``."""
    out = []
    i0 = 0
    for j in range(1, len(t)):
        ref = tracked[i0]
        if ref != 0 and abs(cmath.phase(tracked[j] / ref)) > _PIECE_ANGLE and j - 1 > i0:
            out.append((t[i0], t[j - 1], tracked[i0]))
            i0 = j - 1
    out.append((t[i0], t[-1], tracked[i0] if tracked[i0] != 0 else tracked[-1]))
    return out


def integrate_segment(curve: PlaneCurveSpec, p: complex, q: complex, start: complex,
                      tol: float = QUAD_TOLERANCE) -> tuple[complex, complex]:
    """Integral of the continued speed over ``p -> q``.

    ``start`` fixes the branch at ``p``.  Returns ``(integral, root_at_q)`` so
    legs can be chained.
    """
    d = q - p
    if d == 0:
        return 0j, start
    t, tracked = _track_segment(curve, p, q, start)
    total = 0j
    for t0, t1, ref in _pieces(t, tracked):
        def f(s, ref=ref):
            r = cmath.sqrt(complex(curve.speed_squared(p + s * d)))
            return (-r if (r * ref.conjugate()).real < 0 else r) * d

        with warnings.catch_warnings():
            warnings.simplefilter("error", IntegrationWarning)
            try:
                val, err = quad(f, t0, t1, complex_func=True, epsabs=1e-13, epsrel=1e-13, limit=200)
            except IntegrationWarning as exc:
                raise QuadratureError(f"{curve.name}: quadrature on {p} -> {q} failed: {exc}") from exc
        if abs(err) > tol:
            raise QuadratureError(f"{curve.name}: quadrature error {abs(err):.2e} exceeds {tol:.0e}")
        total += val
    return total, complex(tracked[-1])


def path_integral(curve: PlaneCurveSpec, path: Sequence[complex], tol: float = QUAD_TOLERANCE) -> complex:
    """Integral of the speed along ``path``, continued from the principal branch at ``path[0]``."""
    path = [complex(p) for p in path]
    if len(path) < 2:
        raise DomainError("a path needs at least two points")
    check_path(curve, path)
    root = complex(curve.speed(path[0]))
    if root == 0:
        raise BranchProximityError(f"path starts on a branch point of the {curve.name} speed", path[0])
    total = 0j
    for p, q in zip(path[:-1], path[1:]):
        val, root = integrate_segment(curve, p, q, root, tol)
        total += val
    return total


def bjorling_numeric(curve: PlaneCurveSpec, z: complex, path: Sequence[complex] | None = None,
                     conjugate: bool = False) -> np.ndarray:
    """Björling surface point ``Re (x(z), y(z), i int_path speed)`` (``Im`` if conjugate).

    ``path`` defaults to the straight segment from ``curve.basepoint``; it must
    start there and end at ``z``.
    """
    z = complex(z)
    if path is None:
        path = straight_path(curve.basepoint, z)
    path = [complex(p) for p in path]
    if abs(path[0] - curve.basepoint) > 1e-14 or abs(path[-1] - z) > 1e-14:
        raise DomainError("path must run from the curve basepoint to z")
    w = np.array([complex(curve.x(z)), complex(curve.y(z)), 1j * path_integral(curve, path)])
    return w.imag if conjugate else w.real


def _accumulate(curve, origin: complex, offsets: np.ndarray, direction: complex,
                root0: complex, tol: float):
    """Integrals from ``origin`` to ``origin + offsets*direction``, chained outward.

    Legs are routed with :func:`detour_path`; nodes sitting on a branch point
    are left NaN.  Returns ``(integrals, roots)``.
    """
    vals = np.full(offsets.shape, np.nan + 0j)
    roots = np.full(offsets.shape, np.nan + 0j)
    bps = np.asarray(curve.branch_points, dtype=complex)
    for side in (1.0, -1.0):
        idx = np.nonzero(offsets >= 0 if side > 0 else offsets < 0)[0]
        idx = idx[np.argsort(side * offsets[idx])]
        prev, acc, root = origin, 0j, root0
        for i in idx:
            cur = origin + offsets[i] * direction
            if bps.size and np.min(np.abs(bps - cur)) <= BRANCH_EPSILON:
                continue
            legs = detour_path(curve, [prev, cur])
            for p, q in zip(legs[:-1], legs[1:]):
                val, root = integrate_segment(curve, p, q, root, tol)
                acc += val
            vals[i], roots[i] = acc, root
            prev = cur
    return vals, roots


def naive_grid_integrals(curve: PlaneCurveSpec, us, vs, tol: float = QUAD_TOLERANCE) -> np.ndarray:
    """Speed integrals along detoured L-paths from the basepoint to each node ``us[i] + 1j*vs[j]``.

    Equal to ``path_integral(curve, detour_path(curve, l_path(base, z)))`` node
    by node, but accumulated along grid lines.  Shape ``(len(vs), len(us))``;
    NaN where the path meets a branch point.
    """
    base = complex(curve.basepoint)
    us = np.asarray(us, dtype=float)
    vs = np.asarray(vs, dtype=float)
    root_base = complex(curve.speed(base))
    hvals, hroots = _accumulate(curve, base, us - base.real, 1.0, root_base, tol)
    out = np.full((len(vs), len(us)), np.nan + 0j)
    for i, x in enumerate(us):
        if np.isnan(hvals[i]):
            continue
        col, _ = _accumulate(curve, complex(x, base.imag), vs - base.imag, 1j, complex(hroots[i]), tol)
        out[:, i] = hvals[i] + col
    return out
