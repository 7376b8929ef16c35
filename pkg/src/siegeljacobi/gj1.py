"""The n = 1 picture: disk polynomials, half-plane coordinates, real metric.

This module collects everything special to one degree of freedom: the
Hermite-type polynomial basis P_n(z, w) with its closed Hermite form, the
orthonormal basis functions and the kernel series they resum, the Cayley map
between the unit-disk picture (z, w) and the upper-half-plane picture (u, v),
the two matching presentations of the invariant two-form, the real
four-coordinate metric, and the classical affine action on the half-plane.

The disk-picture index ``kappa`` here follows the half-plane normalization:
the closed kernel is ``(1 - w conj(w'))^{-2 kappa} exp(...)``, which matches
the general-n module at ``k = 4 kappa``.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .diffops import MPoly
from .errors import BranchViolation, DomainViolation, Singular

__all__ = [
    "kappa_from_weight",
    "weight_from_kappa",
    "pn_poly",
    "pn_value",
    "hermite_value",
    "hermite_check",
    "hermite_exact_equal",
    "basis_fn",
    "kernel_closed",
    "kernel_series",
    "cayley",
    "cayley_inverse",
    "disk_form",
    "halfplane_form",
    "kb_form_check",
    "ez_metric",
    "halfplane_metric_real",
    "gj0_compose",
    "gj0_act",
    "match_jacobi_parameters",
]

PN_VARS = ("z", "w")


def kappa_from_weight(k: float) -> float:
    """Convert the general-module index to this module's: ``kappa = k/4``."""
    return k / 4


def weight_from_kappa(kappa: float) -> float:
    """Inverse of :func:`kappa_from_weight`."""
    return 4 * kappa


def pn_poly(n: int) -> MPoly:
    """Heat-kernel polynomial ``P_n = n! sum_k (w/2)^k z^(n-2k) / (k!(n-2k)!)``.

    Integer coefficients, exact; generating function ``exp(zt + w t^2/2)``.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    terms = {}
    for k in range(n // 2 + 1):
        coeff = Fraction(math.factorial(n), 2**k * math.factorial(k) * math.factorial(n - 2 * k))
        assert coeff.denominator == 1
        terms[(n - 2 * k, k)] = (coeff, Fraction(0))
    return MPoly(PN_VARS, terms)


def pn_value(n: int, z: complex, w: complex) -> complex:
    """Numeric evaluation of ``P_n`` without building the exact polynomial."""
    total = 0j
    term_fact = float(math.factorial(n))
    for k in range(n // 2 + 1):
        total += (
            (w / 2) ** k
            * z ** (n - 2 * k)
            * (term_fact / (math.factorial(k) * math.factorial(n - 2 * k)))
        )
    return total


def _hermite_coeffs(n: int):
    """Integer coefficient list of the (physicists') Hermite polynomial."""
    coeffs = [[1], [0, 2]]  # H_0, H_1 by ascending power
    while len(coeffs) <= n:
        m = len(coeffs) - 1
        prev, cur = coeffs[-2], coeffs[-1]
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * m * c
        coeffs.append(nxt)
    return coeffs[n]


def hermite_value(n: int, x: complex) -> complex:
    """Hermite polynomial by recurrence, valid for complex argument."""
    h0, h1 = 1.0 + 0j, 2.0 * x
    if n == 0:
        return h0
    for m in range(1, n):
        h0, h1 = h1, 2 * x * h1 - 2 * m * h0
    return h1


def hermite_check(n: int, z: complex, w: complex) -> float:
    """Residual of ``P_n(z, w) = (i/sqrt2)^n w^{n/2} H_n(-i z / sqrt(2w))``.

    Uses the principal square root of ``w``.

    Raises
    ------
    BranchViolation
        For ``w`` on the cut (-inf, 0].
    """
    w = complex(w)
    if w.real <= 0 and w.imag == 0:
        raise BranchViolation("w on the branch cut of the square root")
    closed = (
        (1j / math.sqrt(2)) ** n
        * w ** (n / 2)
        * hermite_value(n, -1j * z / np.sqrt(2 * w))
    )
    return float(abs(pn_value(n, z, w) - closed))


def hermite_exact_equal(n: int) -> bool:
    """Exact-arithmetic form of :func:`hermite_check`.

    Clearing the half-integer powers (Hermite parity makes every exponent an
    integer) turns the identity into a polynomial one over the Gaussian
    rationals, checked term by term.
    """
    coeffs = _hermite_coeffs(n)
    terms = {}
    for m, c in enumerate(coeffs):
        if c == 0:
            continue
        # (i/sqrt2)^n w^{n/2} * c * (-i z)^m (2w)^{-m/2}
        #   = c * (-1)^((n-m)/2) 2^(-(n+m)/2) z^m w^((n-m)/2)
        if (n - m) % 2:
            raise AssertionError("parity violation in Hermite coefficients")
        sign = -1 if ((n - m) // 2) % 2 else 1
        coeff = Fraction(c) * sign * Fraction(1, 2 ** ((n + m) // 2))
        key = (m, (n - m) // 2)
        old = terms.get(key, (Fraction(0), Fraction(0)))
        terms[key] = (old[0] + coeff, Fraction(0))
    return MPoly(PN_VARS, terms) == pn_poly(n)


def _disk_weight(m: int, kappa: float) -> float:
    """Orthonormal disk-basis weight ``sqrt(Gamma(m+2k)/(m! Gamma(2k)))``."""
    return math.exp(
        0.5 * (math.lgamma(m + 2 * kappa) - math.lgamma(m + 1) - math.lgamma(2 * kappa))
    )


def basis_fn(nidx: int, midx: int, kappa: float, z: complex, w: complex) -> complex:
    """Basis function ``f_(n,m) = weight_m(kappa) w^m P_n(z, w) / sqrt(n!)``."""
    if kappa <= 0:
        raise ValueError("need kappa > 0")
    return (
        _disk_weight(midx, kappa)
        * w**midx
        * pn_value(nidx, z, w)
        / math.sqrt(float(math.factorial(nidx)))
    )


def kernel_closed(z, w, zp, wp, kappa: float) -> complex:
    """Closed kernel ``(1 - w conj(wp))^{-2 kappa} exp(...)`` (second point
    conjugated)."""
    u = 1 - w * np.conj(wp)
    num = 2 * np.conj(zp) * z + z * z * np.conj(wp) + np.conj(zp) ** 2 * w
    return u ** (-2 * kappa) * np.exp(num / (2 * u))


def kernel_series(z, w, zp, wp, kappa: float, order: int) -> complex:
    """Partial sum of the basis expansion of :func:`kernel_closed`.

    The polynomial factor resums (via the Hermite bilinear identity) to a
    ``(1 - w conj(wp))^{-1/2}`` times the exponential, so the disk weight in
    the sum carries the shifted index ``kappa - 1/4``; with that shift the
    series converges to the closed kernel at exponent ``-2 kappa``.
    """
    kshift = kappa - 0.25
    if kshift <= 0:
        raise ValueError("need kappa > 1/4 for the shifted disk weight")
    total = 0j
    pz = [pn_value(n, z, w) for n in range(order + 1)]
    pzp = [pn_value(n, zp, wp) for n in range(order + 1)]
    for m in range(order + 1):
        wt = _disk_weight(m, kshift)
        fm = wt * w**m
        fmp = wt * wp**m
        inner = 0j
        for n in range(order + 1):
            inner += pz[n] * np.conj(pzp[n]) / float(math.factorial(n))
        total += fm * np.conj(fmp) * inner
    return total


def cayley(v: complex, u: complex):
    """Half-plane to disk: ``w = (v - i)/(v + i)``, ``z = 2 i u/(v + i)``.

    Raises
    ------
    DomainViolation
        If ``v`` is not in the open upper half plane.
    """
    if v.imag <= 0:
        raise DomainViolation("need Im v > 0")
    return (v - 1j) / (v + 1j), 2j * u / (v + 1j)


def cayley_inverse(w: complex, z: complex):
    """Disk to half-plane: ``v = i (1 + w)/(1 - w)``, ``u = z/(1 - w)``."""
    if abs(w) >= 1:
        raise DomainViolation("need |w| < 1")
    return 1j * (1 + w) / (1 - w), z / (1 - w)


def disk_form(z: complex, w: complex, kappa: float) -> np.ndarray:
    """Hermitian coefficient matrix of the two-form in coordinates (z, w).

    ``2 kappa/(1-w wbar)^2 dw ^ dwbar + A ^ Abar / (1 - w wbar)`` with
    ``A = dz + conj(alpha0) dw`` and ``alpha0 = (z + zbar w)/(1 - w wbar)``.
    """
    m = 1.0 / (1 - w * np.conj(w))
    alpha0 = (z + np.conj(z) * w) * m
    a0c = np.conj(alpha0)
    return np.array(
        [
            [m, m * alpha0],
            [m * a0c, 2 * kappa * m**2 + m * abs(alpha0) ** 2],
        ],
        dtype=complex,
    )


def halfplane_form(v: complex, u: complex, kappa: float) -> np.ndarray:
    """Hermitian coefficient matrix in coordinates (v, u).

    ``-2 kappa/(vbar - v)^2 dv ^ dvbar + (2/(i(vbar - v))) B ^ Bbar`` with
    ``B = du - ((u - ubar)/(v - vbar)) dv``.
    """
    hv = -2 * kappa / (np.conj(v) - v) ** 2
    hb = 2.0 / (1j * (np.conj(v) - v))
    c = (u - np.conj(u)) / (v - np.conj(v))
    return np.array(
        [
            [hv + hb * abs(c) ** 2, -hb * np.conj(c)],
            [-hb * c, hb],
        ],
        dtype=complex,
    )


def kb_form_check(v: complex, u: complex, kappa: float) -> float:
    """Pull the disk form back through the Cayley map and compare.

    Returns the max entrywise difference between the pullback and the
    half-plane form at the point.
    """
    w, z = cayley(v, u)
    hd = disk_form(z, w, kappa)
    # holomorphic Jacobian of (v, u) -> (z, w), rows ordered like disk_form
    dz_dv = -2j * u / (v + 1j) ** 2
    dz_du = 2j / (v + 1j)
    dw_dv = 2j / (v + 1j) ** 2
    jac = np.array([[dz_dv, dz_du], [dw_dv, 0.0]], dtype=complex)
    pulled = jac.T @ hd @ jac.conj()
    return float(np.abs(pulled - halfplane_form(v, u, kappa)).max())


def ez_metric(x: float, y: float, p: float, q: float, kappa: float) -> np.ndarray:
    """Real metric in the coordinates (x, y, p, q) with ``v = x + iy``,
    ``u = p v + q``.

    ``ds^2 = kappa/(2 y^2) (dx^2 + dy^2)
             + (1/y)[(x^2 + y^2) dp^2 + dq^2 + 2 x dp dq]``;
    positive definite for ``y > 0``.

    Raises
    ------
    DomainViolation
        For ``y <= 0``.
    """
    if y <= 0:
        raise DomainViolation("need y > 0")
    g = np.zeros((4, 4))
    g[0, 0] = g[1, 1] = kappa / (2 * y**2)
    g[2, 2] = (x**2 + y**2) / y
    g[3, 3] = 1.0 / y
    g[2, 3] = g[3, 2] = x / y
    return g


def halfplane_metric_real(x: float, y: float, p: float, q: float, kappa: float) -> np.ndarray:
    """Real form of :func:`halfplane_form` under the embedding ``u = p v + q``.

    ``G_ab = Re sum_ij H_ij J_ia conj(J_jb)`` for the complex Jacobian ``J``
    of ``(v, u)`` with respect to ``(x, y, p, q)``.
    """
    v = x + 1j * y
    u = p * v + q
    h = halfplane_form(v, u, kappa)
    jac = np.array(
        [
            [1.0, 1j, 0.0, 0.0],
            [p, 1j * p, v, 1.0],
        ],
        dtype=complex,
    )
    return np.real(np.einsum("ij,ia,jb->ab", h, jac, jac.conj()))


def gj0_compose(m1: np.ndarray, l1, m2: np.ndarray, l2):
    """Composition law of the affine half-plane group.

    ``(m1, l1) o (m2, l2) = (m1 m2, l1 m2 + l2)`` with ``l`` acting as a row
    vector; :func:`gj0_act` is a left action for this law.
    """
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    return m1 @ m2, np.asarray(l1, dtype=float) @ m2 + np.asarray(l2, dtype=float)


def gj0_act(m: np.ndarray, l, v: complex, u: complex):
    """Affine action on the half-plane picture.

    ``v1 = (a v + b)/(c v + d)`` and ``u1 = (u + l1 v + l2)/(c v + d)`` for a
    real unimodular ``m = [[a, b], [c, d]]`` and ``l = (l1, l2)``.

    Raises
    ------
    ValueError
        If ``det m != 1`` or the inputs leave the domain.
    Singular
        If ``c v + d = 0`` (impossible for ``Im v > 0`` with real ``m``).
    """
    m = np.asarray(m, dtype=float)
    if abs(np.linalg.det(m) - 1.0) > 1e-10:
        raise ValueError("need det m = 1")
    if v.imag <= 0:
        raise DomainViolation("need Im v > 0")
    a, b = m[0]
    c, d = m[1]
    den = c * v + d
    if den == 0:
        raise Singular("c v + d = 0")
    l1, l2 = float(l[0]), float(l[1])
    return (a * v + b) / den, (u + l1 * v + l2) / den


def match_jacobi_parameters(m: np.ndarray, l):
    """Transport an affine half-plane element to the disk picture.

    Returns ``(g, alpha)`` where ``g`` is the disk-automorphism block pair
    conjugate to ``m`` under the Cayley map and ``alpha = l2 + i l1``; the
    matched group element acts on the disk picture through the translation
    first, i.e. it corresponds to composing the pure rotation-boost after the
    pure translation.
    """
    from .symplectic import sp_new

    m = np.asarray(m, dtype=float)
    a, b = m[0]
    c, d = m[1]
    ga = (a + d) / 2 + 1j * (b - c) / 2
    gb = (a - d) / 2 - 1j * (b + c) / 2
    g = sp_new(np.array([[ga]]), np.array([[gb]]))
    alpha = np.array([l[1] + 1j * l[0]], dtype=complex)
    return g, alpha
