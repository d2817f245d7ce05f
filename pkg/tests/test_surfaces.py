"""Surface evaluators: closed forms, symmetries, and agreement with quadrature."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjorling import curves
from bjorling.elliptic import complete_integrals, jacobi_complex
from bjorling.errors import DomainError
from bjorling.surfaces import (
    SURFACE_NAMES,
    build_surface,
    catalan_model,
    catalan_surface,
    circle_model,
    dual_curve,
    elliptic_catenoid,
    elliptic_catenoid_model,
    hyperbola_bjorling,
    hyperbola_model,
    hyperbola_modulus,
    naive_elliptic_catenoid,
    safe_evaluate,
)
from oracles import incomplete_first_kind

CLOSED_FORMS = [
    catalan_model(),
    elliptic_catenoid_model(2.0, 1.0),
    elliptic_catenoid_model(3.0, 1.5),
    hyperbola_model(1.0, 1.0),
    hyperbola_model(2.0, 0.7),
]


def _interior(model, n=6, shrink=0.9):
    u0, u1, v0, v1 = model.recommended_domain
    us = np.linspace(u0, u1, n) * shrink
    vs = np.linspace(v0, v1, n) * shrink
    u = (us[None, :] + 1j * vs[:, None]).ravel()
    return u[~model.singular_mask(u)]


# --- Catalan ----------------------------------------------------------------

def test_catalan_origin_and_real_axis():
    assert np.array_equal(catalan_surface(0j), [0.0, 0.0, 0.0])
    w = np.linspace(-2, 2, 41)
    got = catalan_surface(w + 0j)
    assert np.allclose(got, np.stack([2 * np.sinh(w), np.sinh(w) ** 2, 0 * w], axis=-1), atol=1e-14)
    # parabola (2t, t^2) with t = sinh w
    assert np.allclose(got[:, 1], got[:, 0] ** 2 / 4, atol=1e-13)


def test_catalan_cycloid():
    th = np.linspace(0, math.pi, 101)
    x, y, z = catalan_surface(1j * th).T
    assert np.max(np.abs(x)) < 1e-10
    assert np.max(np.abs(y - (np.cos(2 * th) - 1) / 2)) < 1e-10
    assert np.max(np.abs(z + (2 * th + np.sin(2 * th)) / 2)) < 1e-10


def test_catalan_matches_parabola_quadrature():
    # Catalan's parameter w maps to the parabola's z = sinh w; integrate along the image path
    parabola = curves.parabola_curve()
    for w in [0.4 + 0.3j, -1.1 + 1.2j, 0.8 - 2.5j]:
        ts = np.linspace(0, 1, 400)
        path = list(np.sinh(ts * w))
        got = curves.bjorling_numeric(parabola, complex(np.sinh(w)), path)
        assert np.allclose(got, catalan_surface(w), atol=1e-8)


# --- elliptic catenoid -------------------------------------------------------

def test_elliptic_catenoid_basics():
    assert np.allclose(elliptic_catenoid(0j, 2.0, 1.0), [1.0, 0.0, 0.0], atol=1e-15)
    t = np.linspace(-6, 6, 121)
    x, y, z = elliptic_catenoid(t + 0j, 2.0, 1.0).T
    assert np.max(np.abs(x ** 2 / 1.0 + y ** 2 / 4.0 - 1)) < 1e-12
    assert np.max(np.abs(z)) < 1e-15


def test_elliptic_catenoid_circle_limit():
    # e = 1e-6 is within 1e-12 of the circle; compare with quadrature of the circle surface
    e = 1e-6
    b = math.sqrt(1 - e * e)
    circle = curves.circle_curve()
    for u in [0.3 + 0.2j, 2.0 - 0.9j, -4.1 + 0.5j]:
        assert np.allclose(elliptic_catenoid(u, 1.0, b), curves.bjorling_numeric(circle, u), atol=1e-8)
        assert np.allclose(elliptic_catenoid(u, 1.0, b, conjugate=True),
                           curves.bjorling_numeric(circle, u, conjugate=True), atol=1e-8)


def test_circle_surface_is_catenoid():
    pts = circle_model().evaluate(np.array([0.3 + 0.4j, 2.5 - 0.9j, 5.0 + 1.0j]))
    v = np.array([0.4, -0.9, 1.0])
    assert np.allclose(np.hypot(pts[:, 0], pts[:, 1]), np.cosh(v), atol=1e-8)
    assert np.allclose(pts[:, 2], -v, atol=1e-8)


def _naive_parameter(y, e):
    """u = iv with sn(iv, k) = sin(iy), using sn(iv, k) = i sc(v, k')."""
    return 1j * incomplete_first_kind(math.atan(math.sinh(y)), math.sqrt(1 - e * e))


@pytest.mark.parametrize("y", [0.2, 0.5, 1.0, 1.8])
def test_naive_matches_closed_on_imaginary_axis(y):
    a, b = 2.0, 1.0
    e = curves.ellipse_eccentricity(a, b)
    u = _naive_parameter(y, e)
    for conj in (False, True):
        naive = naive_elliptic_catenoid(1j * y, a, b, conjugate=conj)
        assert np.allclose(naive, elliptic_catenoid(u, a, b, conjugate=conj), atol=1e-8)


def test_naive_matches_closed_near_origin():
    # z = am(u) on a branch-free patch: the straight path 0 -> z has the same integral
    a, b = 2.0, 1.0
    m = complete_integrals(curves.ellipse_eccentricity(a, b))
    for u in [0.3 + 0.2j, -0.8 + 0.4j, 1.0 - 0.3j]:
        z = complex(np.arcsin(complex(jacobi_complex(u, m).sn)))
        for conj in (False, True):
            assert np.allclose(naive_elliptic_catenoid(z, a, b, conjugate=conj),
                               elliptic_catenoid(u, a, b, conjugate=conj), atol=1e-8)


def test_naive_real_axis_is_ellipse():
    for t in [0.5, 2.0, -1.3]:
        assert np.allclose(naive_elliptic_catenoid(t, 2.0, 1.0), [math.cos(t), 2 * math.sin(t), 0.0], atol=1e-12)


def test_naive_two_paths_beyond_branch_point():
    ell = curves.ellipse_curve(2.0, 1.0)
    bp = complex(math.pi / 2, math.acosh(1 / ell.params["e"]))
    end = bp + 0.5j
    left = [0j, bp.real - 0.4 + 0.2j, bp.real - 0.4 + bp.imag * 1j + 0.25j, end]
    right = [0j, bp.real + 0.4 + 0.2j, bp.real + 0.4 + bp.imag * 1j + 0.25j, end]
    pl = naive_elliptic_catenoid(end, 2.0, 1.0, left, conjugate=True)
    pr = naive_elliptic_catenoid(end, 2.0, 1.0, right, conjugate=True)
    ql = naive_elliptic_catenoid(end, 2.0, 1.0, left)
    qr = naive_elliptic_catenoid(end, 2.0, 1.0, right)
    # conjugate third coordinate is Re of the integral; the surface's is -Im
    assert abs(pl[2] - pr[2]) > 0.1
    assert abs(ql[2] - qr[2]) < 1e-8


# --- hyperbola ----------------------------------------------------------------

def test_hyperbola_modulus():
    assert hyperbola_modulus(1.0, 1.0) == pytest.approx(1 / math.sqrt(2))
    with pytest.raises(DomainError):
        hyperbola_modulus(0.0, 1.0)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 0.7), (0.5, 3.0)])
def test_hyperbola_examples(a, b):
    assert np.allclose(hyperbola_bjorling(0j, a, b), [b, 0.0, 0.0], atol=1e-15)
    m = complete_integrals(hyperbola_modulus(a, b))
    k = m.k
    t = np.linspace(-0.9, 0.9, 181) * k * m.Kprime
    x, y, _ = hyperbola_bjorling(1j * t, a, b).T
    assert np.max(np.abs(x ** 2 / b ** 2 - y ** 2 / a ** 2 - 1)) < 1e-9
    r = np.linspace(-2, 2, 41) * k * m.K
    assert np.max(np.abs(hyperbola_bjorling(r + 0j, a, b)[:, 1])) < 1e-15


# --- shared properties ----------------------------------------------------------

def test_dual_curve_at_zero_is_basepoint_image():
    for model in CLOSED_FORMS:
        assert np.allclose(dual_curve(model, 0.0), model.evaluate(0j), atol=1e-15)
    assert np.allclose(dual_curve(circle_model(), 0.0), [1.0, 0.0, 0.0], atol=1e-15)


def test_circle_dual_is_catenary():
    t = np.linspace(-1, 1, 11)
    pts = dual_curve(circle_model(), t)
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - np.cosh(t))) < 1e-8


@pytest.mark.parametrize("model", CLOSED_FORMS, ids=lambda m: f"{m.name}{m.params.get('a', '')}")
def test_reflection_symmetry(model):
    u = _interior(model)
    p = model.evaluate(u)
    q = model.evaluate(np.conj(u))
    flip = np.array([1, -1, 1]) if model.name.startswith("hyperbola") else np.array([1, 1, -1])
    assert np.allclose(q, p * flip, atol=1e-12)


@pytest.mark.parametrize("model", CLOSED_FORMS, ids=lambda m: f"{m.name}{m.params.get('a', '')}")
def test_holomorphic_isotropic_and_harmonic(model):
    u = _interior(model)
    h = 1e-5
    f = model.holomorphic
    dx = (f(u + h) - f(u - h)) / (2 * h)
    dy = (f(u + 1j * h) - f(u - 1j * h)) / (2 * h)
    scale = np.max(np.abs(dx))
    # Cauchy-Riemann: d/dy = i d/dx
    assert np.max(np.abs(dy - 1j * dx)) < 1e-6 * scale
    # isotropy: f'.f' = 0 makes the immersion conformal
    assert np.max(np.abs(np.sum(dx * dx, axis=-1))) < 1e-6 * scale ** 2
    hl = 1e-3
    lap = (f(u + hl) + f(u - hl) + f(u + 1j * hl) + f(u - 1j * hl) - 4 * f(u)) / hl ** 2
    assert np.max(np.abs(lap.real)) < 1e-4 * max(1.0, scale)


def test_conjugated_swaps_names():
    ec = elliptic_catenoid_model()
    eh = ec.conjugated()
    assert eh.conjugate and eh.name == "elliptical-helicoid"
    assert eh.conjugated().name == "elliptical-catenoid"
    u = np.array([0.3 + 0.2j])
    assert np.allclose(eh.evaluate(u), elliptic_catenoid(u, 2.0, 1.0, conjugate=True))


@settings(deadline=None, max_examples=40)
@given(st.floats(-4, 4), st.floats(-0.85, 0.85))
def test_catalan_conjugate_isometric_pointwise(x, y):
    # |f'|^2 is the same for Re f and Im f
    w = complex(x, y * math.pi)
    h = 1e-6
    d = (catalan_surface(w + h) - catalan_surface(w - h)) / (2 * h)
    dc = (catalan_surface(w + h, True) - catalan_surface(w - h, True)) / (2 * h)
    assert abs(d @ d - dc @ dc) < 1e-6 * (1 + d @ d)


def test_safe_evaluate_masks_poles():
    model = elliptic_catenoid_model()
    m = model.params["modulus"]
    u = np.array([0.1 + 0.1j, 1j * m.Kprime, 2 * m.K + 1j * m.Kprime + 1e-8])
    pts, valid = safe_evaluate(model, u)
    assert valid.tolist() == [True, False, False]
    assert np.all(np.isnan(pts[~valid]))


def test_build_surface_names():
    for name in SURFACE_NAMES:
        model = build_surface(name)
        assert model.recommended_domain[0] < model.recommended_domain[1]
    assert build_surface("elliptical-helicoid").conjugate
    assert not build_surface("elliptical-helicoid", conjugate=True).conjugate
    assert build_surface("helicoid").name == "helicoid"
    assert build_surface("catalan", naive=True).name == "parabola-naive"
    assert build_surface("elliptical-catenoid", naive=True).name == "elliptical-catenoid-naive"
    with pytest.raises(DomainError):
        build_surface("enneper")
    with pytest.raises(DomainError):
        build_surface("hyperbola", naive=True)
    with pytest.raises(DomainError):
        build_surface("elliptical-catenoid", a=1.0, b=2.0)
