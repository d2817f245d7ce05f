"""Björling surfaces of the conics as Re/Im of holomorphic immersions.

Closed forms (pole-free or pole-masked, single valued):

* Catalan's surface, from the parabola ``(2t, t^2)`` via ``z = sinh w``;
* the Elliptical Catenoid / Helicoid, from the ellipse ``(b cos t, a sin t)``
  via ``sn(u, e) = sin z``;
* the hyperbola surface with modulus ``k = 1/e``.

Naive forms integrate the multivalued speed along explicit paths and
reproduce the false edges of a direct plot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from . import curves
from .curves import PlaneCurveSpec, bjorling_numeric, ellipse_eccentricity, l_path
from .elliptic import (
    Modulus,
    complete_integrals,
    integral_cn_squared,
    jacobi_complex,
    jacobi_epsilon,
    pole_mask,
)
from .errors import DomainError, SingularityError

Domain = tuple[float, float, float, float]


@dataclass(frozen=True)
class SurfaceModel:
    """A parameterized minimal surface ``u -> Re f(u)`` (``Im f(u)`` when conjugate).

    ``immersion`` maps a complex array of shape ``S`` to a complex array of
    shape ``S + (3,)``.  ``singular`` (optional) returns a boolean mask of
    parameters that must be skipped; ``grid_immersion`` (optional) evaluates a
    whole rectangular grid at once and returns NaN at unusable nodes.
    """

    name: str
    immersion: Callable[[np.ndarray], np.ndarray]
    conjugate: bool = False
    params: Mapping[str, object] = field(default_factory=dict)
    recommended_domain: Domain = (-1.0, 1.0, -1.0, 1.0)
    pole_set: str = "none"
    singular: Callable[[np.ndarray], np.ndarray] | None = None
    vectorized: bool = True
    grid_immersion: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    conjugate_name: str | None = None

    def holomorphic(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=complex)
        if self.vectorized:
            return np.asarray(self.immersion(u), dtype=complex)
        out = np.empty(u.shape + (3,), dtype=complex)
        for idx in np.ndindex(u.shape):
            out[idx] = self.immersion(u[idx])
        return out

    def evaluate(self, u) -> np.ndarray:
        w = self.holomorphic(u)
        return w.imag if self.conjugate else w.real

    def conjugated(self) -> "SurfaceModel":
        """The other member of the conjugate pair (same immersion, Im <-> Re)."""
        return replace(self, conjugate=not self.conjugate,
                       name=self.conjugate_name or self.name,
                       conjugate_name=self.name)

    def singular_mask(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=complex)
        if self.singular is None:
            return np.zeros(u.shape, dtype=bool)
        return np.asarray(self.singular(u), dtype=bool)


def _select(w: np.ndarray, conjugate: bool) -> np.ndarray:
    return w.imag if conjugate else w.real


# ---------------------------------------------------------------------------
# Catalan


def _catalan_immersion(w):
    w = np.asarray(w, dtype=complex)
    s, c = np.sinh(w), np.cosh(w)
    return np.stack([2.0 * s, s * s, 1j * (w + s * c)], axis=-1)


def catalan_surface(w, conjugate: bool = False) -> np.ndarray:
    """Catalan's surface: Re (or Im) of ``(2 sinh w, sinh^2 w, i (w + sinh w cosh w))``.

    The third entry is the primitive of ``2 cosh^2 w``, the parabola's speed
    after ``z = sinh w``; substituting removes the branch points at ``+-i``.
    """
    return _select(_catalan_immersion(w), conjugate)


def catalan_model(conjugate: bool = False) -> SurfaceModel:
    return SurfaceModel(
        name="catalan-conjugate" if conjugate else "catalan",
        conjugate_name="catalan" if conjugate else "catalan-conjugate",
        immersion=_catalan_immersion,
        conjugate=conjugate,
        params={"generator": "parabola (2t, t^2)"},
        recommended_domain=(-2.0, 2.0, -math.pi, math.pi),
        pole_set="none (entire)",
    )


# ---------------------------------------------------------------------------
# Elliptical Catenoid / Helicoid


def _ec_immersion(a: float, b: float, m: Modulus):
    def f(u):
        u = np.asarray(u, dtype=complex)
        sn, cn, _ = jacobi_complex(u, m)
        eps = jacobi_epsilon(u, m)
        return np.stack(np.broadcast_arrays(b * np.asarray(cn), a * np.asarray(sn),
                                            1j * a * np.asarray(eps)), axis=-1)
    return f


def elliptic_catenoid(u, a: float, b: float, conjugate: bool = False) -> np.ndarray:
    """Re (Im) of ``(b cn(u,e), a sn(u,e), i a Eps(u,e))`` with ``e = sqrt(a^2-b^2)/a``.

    Real ``u`` traces the ellipse ``x^2/b^2 + y^2/a^2 = 1``.
    """
    m = complete_integrals(ellipse_eccentricity(a, b))
    return _select(_ec_immersion(a, b, m)(u), conjugate)


def elliptic_catenoid_model(a: float = 2.0, b: float = 1.0, conjugate: bool = False) -> SurfaceModel:
    m = complete_integrals(ellipse_eccentricity(a, b))
    vmax = 0.9 * m.Kprime if math.isfinite(m.Kprime) else 2.0
    return SurfaceModel(
        name="elliptical-helicoid" if conjugate else "elliptical-catenoid",
        conjugate_name="elliptical-catenoid" if conjugate else "elliptical-helicoid",
        immersion=_ec_immersion(a, b, m),
        conjugate=conjugate,
        params={"a": a, "b": b, "modulus": m},
        recommended_domain=(-2.0 * m.K, 2.0 * m.K, -vmax, vmax),
        pole_set="u = 2pK + (2q+1)iK' for modulus e",
        singular=lambda u: pole_mask(u, m),
    )


# ---------------------------------------------------------------------------
# hyperbola


def hyperbola_modulus(a: float, b: float) -> float:
    """``k = 1/e = a / sqrt(a^2 + b^2)``; the unique value making the immersion isotropic."""
    if not (a > 0 and b > 0):
        raise DomainError(f"hyperbola needs a, b > 0, got a={a!r}, b={b!r}")
    return a / math.hypot(a, b)


def _hyp_immersion(a: float, b: float, m: Modulus):
    k = m.k

    def f(u):
        s = np.asarray(u, dtype=complex) / k
        sn, _, dn = jacobi_complex(s, m)
        # int_0^u cn^2(sigma/k) d sigma = k int_0^{u/k} cn^2
        icn2 = k * np.asarray(integral_cn_squared(s, m))
        return np.stack(np.broadcast_arrays(b * np.asarray(dn), 1j * a * k * np.asarray(sn),
                                            a * icn2), axis=-1)
    return f


def hyperbola_bjorling(u, a: float, b: float, conjugate: bool = False) -> np.ndarray:
    """Re (Im) of ``(b dn(u/k,k), i a k sn(u/k,k), a int_0^u cn^2(s/k,k) ds)``.

    The imaginary axis ``u = it`` traces the hyperbola ``x^2/b^2 - y^2/a^2 = 1``;
    the real axis traces its cycloid-like dual in the ``x-z`` plane.
    """
    m = complete_integrals(hyperbola_modulus(a, b))
    return _select(_hyp_immersion(a, b, m)(u), conjugate)


def hyperbola_model(a: float = 1.0, b: float = 1.0, conjugate: bool = False) -> SurfaceModel:
    m = complete_integrals(hyperbola_modulus(a, b))
    k = m.k
    return SurfaceModel(
        name="hyperbola-conjugate" if conjugate else "hyperbola",
        conjugate_name="hyperbola" if conjugate else "hyperbola-conjugate",
        immersion=_hyp_immersion(a, b, m),
        conjugate=conjugate,
        params={"a": a, "b": b, "modulus": m},
        recommended_domain=(-2.0 * k * m.K, 2.0 * k * m.K, -0.9 * k * m.Kprime, 0.9 * k * m.Kprime),
        pole_set="u = k(2pK + (2q+1)iK') for k = a/sqrt(a^2+b^2)",
        singular=lambda u: pole_mask(np.asarray(u) / k, m),
    )


# ---------------------------------------------------------------------------
# path-integrated (naive) surfaces


def naive_elliptic_catenoid(z, a: float, b: float, path: Sequence[complex] | None = None,
                            conjugate: bool = False) -> np.ndarray:
    """Re (Im) of ``(b cos z, a sin z, i a int_path sqrt(1 - e^2 sin^2))`` by quadrature.

    ``path`` defaults to the straight segment ``0 -> z``.  The result depends
    on how the path winds around the zeros of the radicand.
    """
    return bjorling_numeric(curves.ellipse_curve(a, b), z, path, conjugate)


def _numeric_model(curve: PlaneCurveSpec, name: str, conj_name: str, conjugate: bool,
                   domain: Domain, path_rule: Callable[[complex, complex], list[complex]],
                   params: Mapping[str, object], use_grid: bool) -> SurfaceModel:
    base = complex(curve.basepoint)

    def f(z):
        z = complex(z)
        path = path_rule(base, z)
        return np.array([complex(curve.x(z)), complex(curve.y(z)),
                         1j * curves.path_integral(curve, path)])

    grid = None
    if use_grid:
        def grid(us, vs):
            z = np.asarray(us)[None, :] + 1j * np.asarray(vs)[:, None]
            integ = curves.naive_grid_integrals(curve, us, vs)
            x = np.asarray(curve.x(z), dtype=complex)
            y = np.asarray(curve.y(z), dtype=complex)
            return np.stack([x, y, 1j * integ], axis=-1)

    return SurfaceModel(
        name=conj_name if conjugate else name,
        conjugate_name=name if conjugate else conj_name,
        immersion=f,
        conjugate=conjugate,
        params=dict(params),
        recommended_domain=domain,
        pole_set=f"paths through branch points {curve.branch_points[:4]}...",
        vectorized=False,
        grid_immersion=grid,
    )


def _plot_path(curve: PlaneCurveSpec):
    """L-path with right-hand detours: the path a row-by-row plot effectively integrates along."""
    return lambda base, z: curves.detour_path(curve, l_path(base, z))


def circle_model(conjugate: bool = False) -> SurfaceModel:
    """Catenoid (helicoid) as the numeric Björling surface of the unit circle."""
    return _numeric_model(curves.circle_curve(), "catenoid", "helicoid", conjugate,
                          (0.0, 2.0 * math.pi, -1.0, 1.0), curves.straight_path,
                          {"generator": "unit circle"}, use_grid=True)


def parabola_model(conjugate: bool = False) -> SurfaceModel:
    """Naive parabola surface: L-path quadrature of ``2 sqrt(1 + z^2)``.

    The cut above ``+i`` (and below ``-i``) shows up as a fold in the surface
    and a jump in its conjugate.
    """
    curve = curves.parabola_curve()
    return _numeric_model(curve, "parabola-naive", "parabola-naive-conjugate",
                          conjugate, (-2.0, 2.0, -2.0, 2.0), _plot_path(curve),
                          {"generator": "parabola (2t, t^2)"}, use_grid=True)


def naive_elliptic_model(a: float = 2.0, b: float = 1.0, conjugate: bool = False) -> SurfaceModel:
    """Naive ellipse surface: L-path quadrature, reproducing the channels of a direct plot."""
    curve = curves.ellipse_curve(a, b)
    return _numeric_model(curve, "elliptical-catenoid-naive", "elliptical-helicoid-naive",
                          conjugate, (-math.pi, math.pi, -1.2, 1.2), _plot_path(curve),
                          {"a": a, "b": b, "e": curve.params["e"]}, use_grid=True)


# ---------------------------------------------------------------------------


def dual_curve(surface: SurfaceModel, t):
    """Point(s) of the imaginary-axis curve ``surface(i t)``: the Björling dual."""
    return surface.evaluate(1j * np.asarray(t, dtype=float))


SURFACE_NAMES = (
    "catalan", "elliptical-catenoid", "elliptical-helicoid", "hyperbola", "circle", "catenoid",
    "helicoid", "parabola",
)


def build_surface(name: str, a: float | None = None, b: float | None = None,
                  conjugate: bool = False, naive: bool = False) -> SurfaceModel:
    """Look up a built-in surface by its command-line name."""
    if name in ("elliptical-helicoid", "helicoid"):
        conjugate = not conjugate
        name = {"elliptical-helicoid": "elliptical-catenoid", "helicoid": "circle"}[name]
    if name == "catalan":
        return parabola_model(conjugate) if naive else catalan_model(conjugate)
    if name == "parabola":
        return parabola_model(conjugate)
    if name == "elliptical-catenoid":
        a = 2.0 if a is None else a
        b = 1.0 if b is None else b
        if naive:
            return naive_elliptic_model(a, b, conjugate)
        return elliptic_catenoid_model(a, b, conjugate)
    if name == "hyperbola":
        if naive:
            raise DomainError("no naive form is provided for the hyperbola surface")
        return hyperbola_model(1.0 if a is None else a, 1.0 if b is None else b, conjugate)
    if name in ("circle", "catenoid"):
        return circle_model(conjugate)
    raise DomainError(f"unknown surface {name!r}; choose from {', '.join(SURFACE_NAMES)}")


def safe_evaluate(surface: SurfaceModel, u) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate where possible: returns ``(points, valid)`` with NaN at skipped nodes."""
    u = np.asarray(u, dtype=complex)
    valid = ~surface.singular_mask(u)
    pts = np.full(u.shape + (3,), np.nan)
    if surface.vectorized:
        if valid.any():
            pts[valid] = surface.evaluate(u[valid])
    else:
        for idx in np.ndindex(u.shape):
            if not valid[idx]:
                continue
            try:
                pts[idx] = surface.evaluate(u[idx])
            except SingularityError:
                valid[idx] = False
    valid &= np.all(np.isfinite(pts), axis=-1)
    return pts, valid
