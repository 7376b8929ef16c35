"""Truncated single-mode Fock space: brute-force ground truth.

Every analytic identity of the package (displacement composition, squeeze
disentangling, the squeezed-vacuum relation, the conjugation equations, the
orbit map and its multiplier, the reproducing kernel) can be checked against
dense matrices on the span of the number states |0>..|N>.  The single-mode
realization ``Kp = a+ a+ / 2``, ``Km = a a / 2``, ``K0 = (a+ a + a a+) / 4``
has vacuum weight 1/4, so the oracle pins the representation index to k = 1.

Accuracy is certified by cutoff doubling rather than a priori bounds: all
checks report a residual that must shrink when N grows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import CutoffTooSmall
from .jacobi import CSPoint, JacobiElement, lambda_cocycle
from .symplectic import SpElement, cartan_decompose

__all__ = [
    "FockOp",
    "FockVec",
    "ladder",
    "number_ops",
    "displacement",
    "squeeze",
    "squeeze_from_generator",
    "cs_vector",
    "vacuum",
    "s_of_g",
    "check_lemma6",
    "check_hpb",
    "beta_of_alpha",
    "alpha_of_beta",
    "oracle_kernel",
    "mm1_residual",
    "squeezed_vacuum_convention",
]

TAIL_FRACTION = 0.9
TAIL_THRESHOLD = 1e-8


@dataclass(frozen=True)
class FockOp:
    """Dense operator on the truncated number basis."""

    cutoff: int
    matrix: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, FockOp):
            return FockOp(self.cutoff, self.matrix @ other.matrix)
        if isinstance(other, FockVec):
            return FockVec(self.cutoff, self.matrix @ other.amps)
        return NotImplemented


@dataclass(frozen=True)
class FockVec:
    """State vector over |0>..|N> with truncation-tail accounting."""

    cutoff: int
    amps: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @property
    def tail_mass(self) -> float:
        """Probability mass above ``TAIL_FRACTION * cutoff``."""
        start = int(TAIL_FRACTION * self.cutoff)
        return float(np.sum(np.abs(self.amps[start:]) ** 2))


def ladder(cutoff: int):
    """Annihilation and creation matrices: ``a |m> = sqrt(m) |m-1>``."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    a = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for m in range(1, cutoff + 1):
        a[m - 1, m] = np.sqrt(m)
    return FockOp(cutoff, a), FockOp(cutoff, a.conj().T)


def number_ops(cutoff: int):
    """The quadratic generators ``(Kp, Km, K0)`` in the truncated basis."""
    a, ad = ladder(cutoff)
    kp = 0.5 * ad.matrix @ ad.matrix
    km = 0.5 * a.matrix @ a.matrix
    k0 = 0.25 * (ad.matrix @ a.matrix + a.matrix @ ad.matrix)
    return FockOp(cutoff, kp), FockOp(cutoff, km), FockOp(cutoff, k0)


def vacuum(cutoff: int) -> FockVec:
    v = np.zeros(cutoff + 1, dtype=complex)
    v[0] = 1.0
    return FockVec(cutoff, v)


def _expm(m: np.ndarray) -> np.ndarray:
    return scipy.linalg.expm(m)


def displacement(alpha: complex, cutoff: int, route_tol: float = 1e-8) -> FockOp:
    """Displacement operator ``exp(alpha a+ - conj(alpha) a)``.

    Both the direct exponential and the normal-ordered product
    ``exp(-|alpha|^2/2) exp(alpha a+) exp(-conj(alpha) a)`` are formed and
    compared on the lower half of the basis.

    Raises
    ------
    CutoffTooSmall
        If the routes disagree beyond ``route_tol`` there, or the displaced
        vacuum leaks too much mass into the tail.
    """
    a, ad = ladder(cutoff)
    direct = _expm(alpha * ad.matrix - np.conj(alpha) * a.matrix)
    ordered = (
        np.exp(-0.5 * abs(alpha) ** 2)
        * _expm(alpha * ad.matrix)
        @ _expm(-np.conj(alpha) * a.matrix)
    )
    half = cutoff // 2
    if np.abs(direct[:half, :half] - ordered[:half, :half]).max() > route_tol:
        raise CutoffTooSmall(f"displacement routes disagree at cutoff {cutoff}")
    if FockVec(cutoff, direct[:, 0]).tail_mass > TAIL_THRESHOLD:
        raise CutoffTooSmall(f"displacement tail mass too large for |alpha|={abs(alpha)}")
    return FockOp(cutoff, direct)


def squeeze(w: complex, cutoff: int, route_tol: float = 1e-8) -> FockOp:
    """Bogoliubov operator for a domain point ``|w| < 1``.

    Built as ``exp(w Kp) exp(eta K0) exp(-conj(w) Km)`` with
    ``eta = log(1 - |w|^2)``; the reverse-ordered form
    ``exp(-conj(w) Km) exp(-eta K0) exp(w Kp)`` must agree.
    """
    if abs(w) >= 1:
        raise ValueError("need |w| < 1")
    kp, km, k0 = number_ops(cutoff)
    eta = np.log(1 - abs(w) ** 2)
    s1 = _expm(w * kp.matrix) @ _expm(eta * k0.matrix) @ _expm(-np.conj(w) * km.matrix)
    s2 = _expm(-np.conj(w) * km.matrix) @ _expm(-eta * k0.matrix) @ _expm(w * kp.matrix)
    # the reverse ordering amplifies corner truncation, so compare deep inside
    deep = cutoff // 8
    if np.abs(s1[:deep, :deep] - s2[:deep, :deep]).max() > route_tol:
        raise CutoffTooSmall(f"squeeze orderings disagree at cutoff {cutoff}")
    return FockOp(cutoff, s1)


def squeeze_from_generator(zeta: complex, cutoff: int) -> FockOp:
    """One-parameter form ``exp(zeta Kp - conj(zeta) Km)``."""
    kp, km, _ = number_ops(cutoff)
    return FockOp(cutoff, _expm(zeta * kp.matrix - np.conj(zeta) * km.matrix))


def cs_vector(z: complex, w: complex, cutoff: int, max_terms: int = 400) -> FockVec:
    """Un-normalized orbit vector ``exp(z a+ + w Kp)|0>`` by series summation.

    Raises
    ------
    CutoffTooSmall
        If the tail mass fraction exceeds the module threshold.
    """
    if abs(w) >= 1:
        raise ValueError("need |w| < 1")
    a, ad = ladder(cutoff)
    kp, _, _ = number_ops(cutoff)
    x = z * ad.matrix + w * kp.matrix
    vec = vacuum(cutoff).amps
    out = vec.copy()
    term = vec.copy()
    for kterm in range(1, max_terms):
        term = x @ term / kterm
        out += term
        if np.linalg.norm(term) < 1e-18:
            break
    result = FockVec(cutoff, out)
    if result.tail_mass > TAIL_THRESHOLD * result.norm**2:
        raise CutoffTooSmall(
            f"orbit vector tail mass {result.tail_mass:.2e} at cutoff {cutoff}"
        )
    return result


def s_of_g(g: SpElement, cutoff: int) -> FockOp:
    """Metaplectic-type lift of a 1x1 group element.

    The Cartan factors ``(zeta, v)`` give
    ``S(g) = exp(zeta Kp - conj(zeta) Km) exp(2 log(v) K0)``; the principal
    logarithm fixes the lift, consistently with the closed-form multiplier
    for elements near the identity.
    """
    if g.n != 1:
        raise ValueError("the oracle is single mode (n = 1)")
    fac = cartan_decompose(g)
    zeta = complex(fac.z[0, 0])
    v = complex(fac.v[0, 0])
    _, _, k0 = number_ops(cutoff)
    return FockOp(
        cutoff,
        squeeze_from_generator(zeta, cutoff).matrix @ _expm(2 * np.log(v) * k0.matrix),
    )


def check_lemma6(alpha: complex, w: complex, cutoff: int) -> float:
    """Residual of the squeezed-vector relation.

    ``D(alpha) S(w)|0>`` must equal
    ``(1 - w wbar)^{1/4} exp(-conj(alpha) z / 2) e_{z,w}`` with
    ``z = alpha - w conj(alpha)`` (single mode, k = 1).
    """
    lhs = displacement(alpha, cutoff).matrix @ (squeeze(w, cutoff).matrix @ vacuum(cutoff).amps)
    z = alpha - w * np.conj(alpha)
    rhs = (
        (1 - w * np.conj(w)) ** 0.25
        * np.exp(-0.5 * np.conj(alpha) * z)
        * cs_vector(z, w, cutoff).amps
    )
    return float(np.linalg.norm(lhs - rhs))


def beta_of_alpha(alpha: complex, zeta: complex) -> complex:
    """Pull a displacement through a squeeze: ``beta = m alpha - n conj(alpha)``."""
    r = abs(zeta)
    m = np.cosh(r)
    n = zeta * np.sinh(r) / r if r > 0 else 0.0
    return m * alpha - n * np.conj(alpha)


def alpha_of_beta(beta: complex, zeta: complex) -> complex:
    """Inverse of :func:`beta_of_alpha`: ``alpha = m beta + n conj(beta)``."""
    r = abs(zeta)
    m = np.cosh(r)
    n = zeta * np.sinh(r) / r if r > 0 else 0.0
    return m * beta + n * np.conj(beta)


def check_hpb(zeta: complex, alpha: complex, cutoff: int) -> float:
    """Max residual of the conjugation equations at one parameter point.

    Checks, on the lower half of the truncated basis:

    * ``S^-1 a S = cosh|zeta| a + sinhc|zeta| zeta a+``
    * ``D(alpha) S = S D(beta)`` with ``beta`` from :func:`beta_of_alpha`
    * ``S(g) D(alpha) S(g)^-1 = D(a alpha + b conj(alpha))`` for the
      hyperbolic element with generator ``zeta``.
    """
    a, ad = ladder(cutoff)
    s = squeeze_from_generator(zeta, cutoff).matrix
    sinv = squeeze_from_generator(-zeta, cutoff).matrix
    r = abs(zeta)
    m = np.cosh(r)
    n = zeta * np.sinh(r) / r if r > 0 else 0.0
    deep = cutoff // 4  # conjugation products touch the corner above this

    lhs = sinv @ a.matrix @ s
    rhs = m * a.matrix + n * ad.matrix
    res = np.abs(lhs[:deep, :deep] - rhs[:deep, :deep]).max()

    d_alpha = displacement(alpha, cutoff).matrix
    beta = beta_of_alpha(alpha, zeta)
    d_beta = displacement(beta, cutoff).matrix
    res = max(res, np.abs((d_alpha @ s - s @ d_beta)[:deep, :deep]).max())

    # matrix blocks of the hyperbolic element exp([[0, zeta], [conj zeta, 0]])
    ag = complex(m)
    bg = complex(n)
    alpha_g = ag * alpha + bg * np.conj(alpha)
    lhs2 = s @ d_alpha @ sinv
    rhs2 = displacement(alpha_g, cutoff).matrix
    res = max(res, np.abs((lhs2 - rhs2)[:deep, :deep]).max())
    return float(res)


def oracle_kernel(x: CSPoint, y: CSPoint, cutoff: int) -> complex:
    """Truncated inner product ``(e_x, e_y)``, conjugate-linear in ``x``."""
    if x.n != 1 or y.n != 1:
        raise ValueError("the oracle is single mode (n = 1)")
    vx = cs_vector(complex(x.z[0]), complex(x.W[0, 0]), cutoff)
    vy = cs_vector(complex(y.z[0]), complex(y.W[0, 0]), cutoff)
    return complex(np.vdot(vx.amps, vy.amps))


def mm1_residual(g: SpElement, alpha: complex, z: complex, w: complex, cutoff: int):
    """End-to-end orbit check ``S(g) D(alpha) e_{z,w} = lambda e_{z1,w1}``.

    The right-hand side uses the closed-form multiplier and image point at
    k = 1.  Returns ``(residual, data)`` with the cocycle data; this single
    check arbitrates every convention flag in the package.
    """
    x = CSPoint(z=np.array([z]), W=np.array([[w]]))
    h = JacobiElement(g=g, alpha=np.array([alpha]), t=0.0)
    data = lambda_cocycle(h, x, 1, unchecked_branch=True)
    lhs = s_of_g(g, cutoff).matrix @ (
        displacement(alpha, cutoff).matrix @ cs_vector(z, w, cutoff).amps
    )
    rhs = data.lam * cs_vector(complex(data.z1[0]), complex(data.W1[0, 0]), cutoff).amps
    return float(np.linalg.norm(lhs - rhs)), data


def squeezed_vacuum_convention(w: complex, cutoff: int):
    """Probe which reading of the orbit-vector argument matches ``S(w)|0>``.

    Returns residuals ``{"plain": r0, "rotated": r1}`` for
    ``(1-|w|^2)^{1/4} exp(w Kp)|0>`` versus the same with ``w/i`` in the
    exponent.  The plain reading is the one used throughout the package.
    """
    lhs = squeeze(w, cutoff).matrix @ vacuum(cutoff).amps
    pref = (1 - abs(w) ** 2) ** 0.25
    plain = pref * cs_vector(0.0, w, cutoff).amps
    rotated = pref * cs_vector(0.0, w / 1j, cutoff).amps
    return {
        "plain": float(np.linalg.norm(lhs - plain)),
        "rotated": float(np.linalg.norm(lhs - rotated)),
    }
