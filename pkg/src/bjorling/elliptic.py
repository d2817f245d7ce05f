"""Jacobi elliptic functions of real and complex argument.

Real arguments use the descending Landen (AGM) recursion after reduction to
``[-K, K]``.  Complex arguments combine the real-axis triple at modulus ``k``
with the imaginary-axis triple at the complementary modulus ``k'`` through the
addition theorem and Jacobi's imaginary transformation, so no quadrature is
needed anywhere in this module.

All functions accept scalars or numpy arrays and broadcast elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, PoleProximityError

POLE_EPSILON = 1e-6
_MAX_AGM_STEPS = 40


class JacobiTriple(NamedTuple):
    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray


def _agm_sequence(k: float, kprime: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Arithmetic-geometric mean ladder ``(a_n), (c_n)`` started at ``(1, k', k)``."""
    a, b, c = 1.0, kprime, k
    an, cn = [a], [c]
    for _ in range(_MAX_AGM_STEPS):
        if abs(c) <= 1e-17 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        an.append(a)
        cn.append(c)
    return tuple(an), tuple(cn)


def _complete_from_sequence(an, cn) -> tuple[float, float]:
    K = math.pi / (2.0 * an[-1])
    s = math.fsum(2.0 ** (n - 1) * c * c for n, c in enumerate(cn))
    return K, K * (1.0 - s)


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus with its quarter periods and complete integrals.

    Build instances with :func:`complete_integrals`.  ``Kprime`` is infinite
    for ``k == 0`` (the real period lattice degenerates to the trig case).
    """

    k: float
    kprime: float
    K: float
    Kprime: float
    E: float
    Eprime: float
    _ladder: tuple = field(repr=False, compare=False, default=())
    _ladder_prime: tuple = field(repr=False, compare=False, default=())

    @property
    def m(self) -> float:
        return self.k * self.k

    def legendre_residual(self) -> float:
        """``E K' + E' K - K K' - pi/2``; zero up to rounding."""
        return self.E * self.Kprime + self.Eprime * self.K - self.K * self.Kprime - math.pi / 2


def complete_integrals(k: float) -> Modulus:
    """Return the :class:`Modulus` for ``0 <= k < 1`` with K, K', E, E' cached."""
    k = float(k)
    if not (0.0 <= k < 1.0) or math.isnan(k):
        raise DomainError(f"elliptic modulus must satisfy 0 <= k < 1, got {k!r}")
    kprime = math.sqrt((1.0 - k) * (1.0 + k))
    ladder = _agm_sequence(k, kprime)
    K, E = _complete_from_sequence(*ladder)
    if k == 0.0:
        ladder_prime = ()
        Kprime, Eprime = math.inf, 1.0
    else:
        ladder_prime = _agm_sequence(kprime, k)
        Kprime, Eprime = _complete_from_sequence(*ladder_prime)
    return Modulus(k, kprime, K, Kprime, E, Eprime, ladder, ladder_prime)


# ---------------------------------------------------------------------------
# real axis


class _RealParts(NamedTuple):
    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray
    am: np.ndarray
    eps: np.ndarray


def _real_parts(u, k, kprime, K, E, ladder) -> _RealParts:
    """sn, cn, dn, am and Eps for real ``u`` at one modulus (``k`` may be 1)."""
    u = np.asarray(u, dtype=float)
    if k == 1.0:
        # complement of k = 0: sn = tanh, cn = dn = sech, Eps = tanh
        t = np.tanh(u)
        sech = 1.0 / np.cosh(u)
        return _RealParts(t, sech, sech.copy(), 2.0 * np.arctan(np.tanh(0.5 * u)), t.copy())
    if k == 0.0:
        s, c = np.sin(u), np.cos(u)
        return _RealParts(s, c, np.ones_like(u), u.copy(), u.copy())

    q = np.rint(u / (2.0 * K))
    r = u - q * (2.0 * K)
    an, cn = ladder
    N = len(an) - 1
    phi = (2.0 ** N) * an[N] * r
    zeta = np.zeros_like(r)
    for n in range(N, 0, -1):
        zeta += cn[n] * np.sin(phi)
        phi = 0.5 * (phi + np.arcsin(cn[n] / an[n] * np.sin(phi)))
    sign = 1.0 - 2.0 * np.mod(q, 2.0)
    s, c = np.sin(phi), np.cos(phi)
    dn = np.sqrt(kprime * kprime + (k * c) ** 2)
    eps = (E / K) * r + zeta + 2.0 * E * q
    return _RealParts(sign * s, sign * c, dn, phi + math.pi * q, eps)


def _parts(u, m: Modulus) -> _RealParts:
    return _real_parts(u, m.k, m.kprime, m.K, m.E, m._ladder)


def _parts_prime(y, m: Modulus) -> _RealParts:
    return _real_parts(y, m.kprime, m.k, m.Kprime, m.Eprime, m._ladder_prime)


def _unwrap(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


def jacobi_real(u, m: Modulus) -> JacobiTriple:
    """Real-valued ``(sn, cn, dn)`` at real ``u``."""
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise DomainError("jacobi_real needs finite arguments")
    p = _parts(u, m)
    return JacobiTriple(_unwrap(p.sn), _unwrap(p.cn), _unwrap(p.dn))


def jacobi_am(u, m: Modulus):
    """Unwrapped amplitude: ``am(u + 2K) = am(u) + pi`` exactly by construction."""
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise DomainError("jacobi_am needs finite arguments")
    return _unwrap(_parts(u, m).am)


def incomplete_epsilon_real(u, m: Modulus):
    """``Eps(u) = E(am(u), k)`` for real ``u``."""
    return _unwrap(_parts(np.asarray(u, dtype=float), m).eps)


# ---------------------------------------------------------------------------
# complex plane


def nearest_pole(z, m: Modulus):
    """Nearest point of the pole lattice ``2pK + (2q+1) i K'`` and its distance."""
    z = np.asarray(z, dtype=complex)
    if m.k == 0.0:
        return np.full(z.shape, np.nan + 0j), np.full(z.shape, np.inf)
    p = np.rint(z.real / (2.0 * m.K))
    q = np.rint((z.imag - m.Kprime) / (2.0 * m.Kprime))
    pole = 2.0 * m.K * p + 1j * m.Kprime * (2.0 * q + 1.0)
    return pole, np.abs(z - pole)


def pole_mask(z, m: Modulus, eps: float = POLE_EPSILON) -> np.ndarray:
    """Boolean mask, True where ``z`` is within ``eps`` of a lattice pole."""
    return np.asarray(nearest_pole(z, m)[1] <= eps)


def _check_poles(z, m: Modulus) -> None:
    pole, dist = nearest_pole(z, m)
    bad = dist <= POLE_EPSILON
    if np.any(bad):
        where = complex(np.asarray(pole)[bad].flat[0])
        raise PoleProximityError(
            f"argument within {POLE_EPSILON:g} of the pole at {where:.15g} (k={m.k:g})", where
        )


def _triple_from_parts(a: _RealParts, b: _RealParts, k: float):
    s, c, d = a.sn, a.cn, a.dn
    s1, c1, d1 = b.sn, b.cn, b.dn
    k2 = k * k
    delta = c1 * c1 + k2 * (s * s1) ** 2
    sn = (s * d1 + 1j * c * d * s1 * c1) / delta
    cn = (c * c1 - 1j * s * d * s1 * d1) / delta
    dn = (d * c1 * d1 - 1j * k2 * s * c * s1) / delta
    return sn, cn, dn


def _complex_triple(z: np.ndarray, m: Modulus):
    return _triple_from_parts(_parts(z.real, m), _parts_prime(z.imag, m), m.k)


def jacobi_complex(z, m: Modulus) -> JacobiTriple:
    """Complex ``(sn, cn, dn)``; raises :class:`PoleProximityError` near a pole."""
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("jacobi_complex needs finite arguments")
    _check_poles(z, m)
    sn, cn, dn = _complex_triple(z, m)
    return JacobiTriple(_unwrap(sn), _unwrap(cn), _unwrap(dn))


def _epsilon_strip(x, y, m: Modulus):
    """Eps(x + iy) for |y| <= K'/2 (imaginary transformation + addition theorem)."""
    a = _parts(x, m)
    b = _parts_prime(y, m)
    sn_z = _triple_from_parts(a, b, m.k)[0]
    eps_iy = 1j * (y + b.dn * b.sn / b.cn - b.eps)
    sn_iy = 1j * b.sn / b.cn
    return a.eps + eps_iy - m.k * m.k * a.sn * sn_iy * sn_z


def _epsilon(z: np.ndarray, m: Modulus) -> np.ndarray:
    if m.k == 0.0:
        return z.astype(complex)
    shape = z.shape
    z = z.reshape(-1)
    K, Kp = m.K, m.Kprime
    gap = Kp - m.Eprime  # Eps(u + 2iK') = Eps(u) + 2i(K' - E')
    q = np.rint(z.real / (2.0 * K))
    p = np.rint(z.imag / (2.0 * Kp))
    x = z.real - 2.0 * K * q
    y = z.imag - 2.0 * Kp * p
    out = 2.0 * m.E * q + 2j * gap * p + np.zeros(z.shape, dtype=complex)

    near_axis = np.abs(y) <= 0.5 * Kp
    if np.any(near_axis):
        out[near_axis] += _epsilon_strip(x[near_axis], y[near_axis], m)
    far = ~near_axis
    if np.any(far):
        # z = w +/- iK' with |Im w| <= K'/2 and Eps(w + iK') = Eps(w) + cs(w) dn(w) + i(K' - E')
        shift = np.where(y[far] > 0, 1.0, -1.0)
        wx, wy = x[far], y[far] - shift * Kp
        sn_w, cn_w, dn_w = _triple_from_parts(_parts(wx, m), _parts_prime(wy, m), m.k)
        out[far] += _epsilon_strip(wx, wy, m) + cn_w * dn_w / sn_w + 1j * gap * shift
    return out.reshape(shape)


def jacobi_epsilon(z, m: Modulus):
    """Single-valued primitive ``Eps(z) = int_0^z dn(s)^2 ds``."""
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("jacobi_epsilon needs finite arguments")
    _check_poles(z, m)
    return _unwrap(_epsilon(z, m))


def integral_cn_squared(z, m: Modulus):
    """``int_0^z cn(s)^2 ds = (Eps(z) - k'^2 z) / k^2`` (needs ``k > 0``)."""
    if m.k == 0.0:
        raise DomainError("integral_cn_squared degenerates at k = 0; use z/2 + sin(2z)/4")
    z = np.asarray(z, dtype=complex)
    eps = np.asarray(jacobi_epsilon(z, m))
    return _unwrap((eps - m.kprime ** 2 * z) / (m.k * m.k))
