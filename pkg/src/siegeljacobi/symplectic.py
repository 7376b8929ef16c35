"""The real symplectic group in its complex block realization.

A group element is stored by its top block row ``(a, b)`` of the 2n x 2n
matrix ``[[a, b], [conj(b), conj(a)]]`` acting on the bounded symmetric
domain D_n of symmetric complex matrices with ``1 - W W* > 0``.  The module
provides membership checks, the inverse and block product, Gauss and Cartan
factorizations, the coordinate maps between the off-diagonal generator Z and
the domain point W, the linear-fractional action, the two-point composition
law on the domain, the coherent-state kernel ``det(1 - W' W*)^{-k/2}`` with
its multiplier, the invariant two-form and volume density, and the
normalization constants of the weighted Bergman inner product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matfun
from .errors import DomainViolation, FormMismatch, NotSymplectic, OutOfDomain, Singular
from .matfun import DEFAULT_TOL, as_cmat, detpow

__all__ = [
    "SpElement",
    "GaussFactors",
    "CartanFactors",
    "sp_new",
    "sp_identity",
    "sp_inverse",
    "sp_compose",
    "gauss_decompose",
    "gauss_reassemble",
    "cartan_decompose",
    "cartan_synthesize",
    "sp_of",
    "w_of_z",
    "z_of_w",
    "siegel_eta",
    "moebius",
    "ball_compose",
    "sp_kernel",
    "multiplier",
    "sp_two_form",
    "sp_density",
    "jn",
    "lambda1",
    "wallach_admissible",
    "sp_rep_apply",
    "sp_random",
    "random_siegel_point",
    "sym_index_pairs",
]


@dataclass(frozen=True)
class SpElement:
    """Group element stored as the complex block pair ``(a, b)``."""

    a: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def as_block_matrix(self) -> np.ndarray:
        """The full 2n x 2n matrix ``[[a, b], [conj b, conj a]]``."""
        return np.block([[self.a, self.b], [self.b.conj(), self.a.conj()]])

    def to_json(self) -> dict:
        return {"a": matfun.mat_to_json(self.a), "b": matfun.mat_to_json(self.b)}

    @staticmethod
    def from_json(d: dict, tol: float = DEFAULT_TOL) -> "SpElement":
        return sp_new(matfun.mat_from_json(d["a"]), matfun.mat_from_json(d["b"]), tol)


@dataclass(frozen=True)
class GaussFactors:
    """Triangular-diagonal-triangular factorization data.

    ``y`` and ``yp`` are the symmetric upper/lower coordinates, ``gamma`` and
    ``delta`` the diagonal blocks; the reassembled product returns the element.
    """

    y: np.ndarray
    yp: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray


@dataclass(frozen=True)
class CartanFactors:
    """Polar-type factorization: symmetric generator ``z`` and unitary ``v``."""

    z: np.ndarray
    v: np.ndarray


def membership_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Worst residual of the four block identities defining the group."""
    n = a.shape[0]
    eye = np.eye(n)
    return max(
        np.linalg.norm(a @ a.conj().T - b @ b.conj().T - eye),
        np.linalg.norm(a @ b.T - b @ a.T),
        np.linalg.norm(a.conj().T @ a - b.T @ b.conj() - eye),
        np.linalg.norm(a.T @ b.conj() - b.conj().T @ a),
    )


def sp_new(a, b, tol: float = DEFAULT_TOL) -> SpElement:
    """Validate the block pair and build an :class:`SpElement`.

    Raises
    ------
    NotSymplectic
        With the worst residual if any of the four block identities fails.
    """
    a = as_cmat(a)
    b = as_cmat(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise NotSymplectic("blocks must be square and of equal size")
    res = membership_residual(a, b)
    if res > tol:
        raise NotSymplectic(f"membership residual {res:.3e} exceeds tol {tol:.1e}")
    return SpElement(a=a, b=b)


def sp_identity(n: int) -> SpElement:
    return SpElement(a=np.eye(n, dtype=complex), b=np.zeros((n, n), dtype=complex))


def sp_inverse(g: SpElement) -> SpElement:
    """Inverse element; blocks are ``(a*, -b^T)``."""
    return SpElement(a=g.a.conj().T, b=-g.b.T)


def sp_compose(g1: SpElement, g2: SpElement, tol: float = DEFAULT_TOL) -> SpElement:
    """Block product of two elements, with a closure check at ``10 * tol``."""
    if g1.n != g2.n:
        raise NotSymplectic("dimension mismatch")
    a = g1.a @ g2.a + g1.b @ g2.b.conj()
    b = g1.a @ g2.b + g1.b @ g2.a.conj()
    res = membership_residual(a, b)
    if res > 10 * tol:
        raise NotSymplectic(f"closure residual {res:.3e} exceeds 10*tol")
    return SpElement(a=a, b=b)


def _inv(m: np.ndarray, what: str) -> np.ndarray:
    try:
        return np.linalg.inv(m)
    except np.linalg.LinAlgError as exc:
        raise Singular(f"{what} is singular") from exc


def gauss_decompose(g: SpElement) -> GaussFactors:
    """Triangular factorization coordinates.

    ``y = b conj(a)^-1``, ``y' = conj(a)^-1 conj(b)``, ``delta = conj(a)``,
    ``gamma = (a*)^-1``; additionally ``1 - y y* = (a a*)^-1 > 0``.
    """
    abar_inv = _inv(g.a.conj(), "conj(a)")
    y = g.b @ abar_inv
    yp = abar_inv @ g.b.conj()
    gamma = _inv(g.a.conj().T, "a*")
    delta = g.a.conj()
    return GaussFactors(y=y, yp=yp, gamma=gamma, delta=delta)


def gauss_reassemble(f: GaussFactors) -> SpElement:
    """Multiply the three Gauss factors back into block form."""
    a = f.gamma + f.y @ f.delta @ f.yp
    b = f.y @ f.delta
    return SpElement(a=a, b=b)


def cartan_decompose(g: SpElement, tol: float = DEFAULT_TOL) -> CartanFactors:
    """Polar-type factorization ``g = exp([[0, z], [zbar, 0]]) diag(v, vbar)``.

    The symmetric generator is the inverse hyperbolic-tangent map of the
    Gauss coordinate ``y = b conj(a)^-1`` and the unitary part is
    ``v = (1 - y y*)^{1/2} a``.

    Raises
    ------
    DomainViolation
        If ``y`` has norm >= 1 (the element is numerically outside the group).
    """
    abar_inv = _inv(g.a.conj(), "conj(a)")
    y = g.b @ abar_inv
    h = y @ y.conj().T
    if np.linalg.eigvalsh(h).max() >= 1.0:
        raise DomainViolation("Gauss coordinate has norm >= 1")
    z = matfun.herm_func(h, matfun.arctanhc_of_sqrt, tol=tol) @ y
    v = matfun.herm_func(h, lambda t: np.sqrt(np.maximum(1.0 - t, 0.0)), tol=tol) @ g.a
    return CartanFactors(z=0.5 * (z + z.T), v=v)


def cartan_synthesize(z: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> SpElement:
    """Assemble an element from Cartan data: ``a = m v``, ``b = n conj(v)``."""
    m, n = matfun.cartan_blocks(z, tol=tol)
    return SpElement(a=m @ v, b=n @ v.conj())


def sp_of(w: np.ndarray, tol: float = DEFAULT_TOL) -> SpElement:
    """The unitary-free element whose Cartan coordinate is the domain point ``w``."""
    return cartan_synthesize(z_of_w(w, tol=tol), np.eye(w.shape[0], dtype=complex), tol=tol)


def w_of_z(z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Map a symmetric generator to its domain point: ``tanhc(sqrt(z z*)) z``."""
    z = matfun.check_symmetric(z, tol=tol)
    h = z @ z.conj().T
    w = matfun.herm_func(h, matfun.tanhc_of_sqrt, tol=tol) @ z
    return 0.5 * (w + w.T)


def z_of_w(w: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of :func:`w_of_z`: ``arctanhc(sqrt(w w*)) w``.

    Raises
    ------
    DomainViolation
        For boundary or exterior points (spectral radius of ``w w*`` >= 1).
    """
    w = matfun.check_symmetric(w, tol=tol)
    h = w @ w.conj().T
    z = matfun.herm_func(
        h, matfun.arctanhc_of_sqrt, domain=lambda t: t < 1.0, tol=tol
    ) @ w
    return 0.5 * (z + z.T)


def siegel_eta(w: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Companion value ``eta = log(1 - w w*)`` of the coordinate maps."""
    w = matfun.check_symmetric(w, tol=tol)
    g = np.eye(w.shape[0]) - w @ w.conj().T
    return matfun.herm_func(g, np.log, domain=lambda t: t > 0.0, tol=tol)


def moebius(g: SpElement, w: np.ndarray, check: bool = True, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Linear-fractional action ``g . w = (a w + b)(conj(b) w + conj(a))^-1``.

    With ``check=True`` the alternative closed form
    ``(w b* + a*)^-1 (b^T + w a^T)`` is evaluated as well and the two must
    agree within ``sqrt eps`` scale; the result is symmetrized.
    """
    w = as_cmat(w)
    den = g.b.conj() @ w + g.a.conj()
    out = (g.a @ w + g.b) @ _inv(den, "conj(b) w + conj(a)")
    if check:
        alt = _inv(w @ g.b.conj().T + g.a.conj().T, "w b* + a*") @ (g.b.T + w @ g.a.T)
        if np.linalg.norm(out - alt) > 1e-8 * max(1.0, np.linalg.norm(out)):
            raise FormMismatch("the two closed forms of the action disagree")
    return 0.5 * (out + out.T)


def _psd_power(h: np.ndarray, p: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    return matfun.herm_func(h, lambda t: np.maximum(t, 0.0) ** p, tol=tol)


def ball_compose(w1: np.ndarray, w2: np.ndarray, tol: float = DEFAULT_TOL):
    """Two-point composition law on the domain.

    Returns ``(w3, v, detv)`` where ``w3`` is the Cartan coordinate of the
    product ``sp_of(w1) sp_of(w2)``, ``v`` the unitary correction and
    ``detv`` its determinant (unimodular), computed from the closed forms

        w3 = (1 - w1 w1*)^{-1/2} (w1 + w2)(1 + w1* w2)^{-1} (1 - w1* w1)^{1/2}
        v  = (M M*)^{-1/2} M,
        M  = (1 - w1 w1*)^{-1/2} (1 + w1 w2*) (1 - w2 w2*)^{-1/2}
        detv = phase of det(1 + w1 w2*).

    Raises
    ------
    Singular
        If ``1 + w1* w2`` is not invertible (never for interior points).
    """
    w1 = as_cmat(w1)
    w2 = as_cmat(w2)
    n = w1.shape[0]
    eye = np.eye(n)
    s1 = eye - w1 @ w1.conj().T
    s1p = eye - w1.conj().T @ w1
    w3 = (
        _psd_power(s1, -0.5, tol)
        @ (w1 + w2)
        @ _inv(eye + w1.conj().T @ w2, "1 + w1* w2")
        @ _psd_power(s1p, 0.5, tol)
    )
    w3 = 0.5 * (w3 + w3.T)
    m = (
        _psd_power(s1, -0.5, tol)
        @ (eye + w1 @ w2.conj().T)
        @ _psd_power(eye - w2 @ w2.conj().T, -0.5, tol)
    )
    v = _psd_power(m @ m.conj().T, -0.5, tol) @ m
    ld = matfun.principal_logdet(eye + w1 @ w2.conj().T)
    detv = complex(np.exp(1j * ld.imag))
    return w3, v, detv


def sp_kernel(z: np.ndarray, zp: np.ndarray, k: float) -> complex:
    """Coherent-state overlap ``det(1 - zp z*)^{-k/2}`` on the domain.

    Conjugate-linear in the first argument: swapping the points conjugates
    the value.
    """
    z = as_cmat(z)
    zp = as_cmat(zp)
    return detpow(np.eye(z.shape[0]) - zp @ z.conj().T, -k / 2)


def multiplier(g: SpElement, w: np.ndarray, k: float) -> complex:
    """Automorphy factor ``det(a* + w b*)^{k/2}`` of the kernel."""
    return detpow(g.a.conj().T + as_cmat(w) @ g.b.conj().T, k / 2)


def sym_index_pairs(n: int):
    """Row-major upper-triangle index pairs for symmetric-matrix coordinates."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def sp_two_form(w: np.ndarray, k: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coefficient matrix of the invariant two-form on the domain.

    In the independent coordinates ``w_ij`` (i <= j) this is the mixed
    Hessian of ``-(k/2) log det(1 - w wbar)``; positive definite for k > 0.
    """
    w = matfun.check_symmetric(w, tol=tol)
    n = w.shape[0]
    m = _inv(np.eye(n) - w @ w.conj().T, "1 - w w*")
    mb = m.conj()
    pairs = sym_index_pairs(n)
    h = np.zeros((len(pairs), len(pairs)), dtype=complex)

    def full(al, be, ga, de):
        return 0.5 * k * mb[be, ga] * m[de, al]

    for c1, (i, j) in enumerate(pairs):
        for c2, (kk, ll) in enumerate(pairs):
            tot = full(i, j, kk, ll)
            if i != j:
                tot += full(j, i, kk, ll)
            if kk != ll:
                tot += full(i, j, ll, kk)
                if i != j:
                    tot += full(j, i, ll, kk)
            h[c1, c2] = tot
    return h


def sp_density(w: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Density ``det(1 - w wbar)^{-(n+1)}`` of the invariant volume."""
    w = matfun.check_symmetric(w, tol=tol)
    n = w.shape[0]
    val = detpow(np.eye(n) - w @ w.conj().T, -(n + 1))
    return float(val.real)


def jn(p: float, n: int, rtol: float = 1e-12) -> float:
    """Normalization integral of ``det(1 - w wbar)^p`` over the domain.

    Both closed forms are evaluated,

        J_n(p) = pi^{n(n+1)/2} / ((p+1)...(p+n))
                 * Gamma(2p+3) Gamma(2p+5) ... Gamma(2p+2n-1)
                 / (Gamma(2p+n+2) ... Gamma(2p+2n))
               = 2^n pi^{n(n+1)/2} prod_i Gamma(2p+2i)/Gamma(2p+n+i+1),

    and required to agree to ``rtol`` relative.

    Raises
    ------
    OutOfDomain
        For ``p <= -1``.
    FormMismatch
        If the forms disagree beyond tolerance.
    """
    if p <= -1:
        raise OutOfDomain(f"need p > -1, got {p}")
    half = n * (n + 1) / 2

    lg = math.lgamma
    # first form, in log space apart from the sign-free rational prefactor
    log_a = half * math.log(math.pi)
    for i in range(1, n + 1):
        log_a -= math.log(p + i)
    for i in range(1, n):
        log_a += lg(2 * p + 2 * i + 1)
    for i in range(2, n + 1):
        log_a -= lg(2 * p + n + i)
    val_a = math.exp(log_a)

    log_b = n * math.log(2.0) + half * math.log(math.pi)
    for i in range(1, n + 1):
        log_b += lg(2 * p + 2 * i) - lg(2 * p + n + i + 1)
    val_b = math.exp(log_b)

    if abs(val_a - val_b) > rtol * abs(val_a):
        raise FormMismatch(
            f"closed forms disagree: {val_a!r} vs {val_b!r} at p={p}, n={n}"
        )
    return val_a


def lambda1(k: float, n: int, rtol: float = 1e-12) -> float:
    """Normalization constant of the weighted Bergman inner product.

    Product form ``2^-n pi^{-n(n+1)/2} prod_i Gamma(k-i)/Gamma(k-2i)``,
    cross-checked against ``1/jn(k/2 - n - 1, n)``.

    Raises
    ------
    OutOfDomain
        For ``k <= 2n`` (outside the convergence domain).
    """
    if k <= 2 * n:
        raise OutOfDomain(f"need k > 2n = {2 * n}, got {k}")
    log_val = -n * math.log(2.0) - n * (n + 1) / 2 * math.log(math.pi)
    for i in range(1, n + 1):
        log_val += math.lgamma(k - i) - math.lgamma(k - 2 * i)
    val = math.exp(log_val)
    alt = 1.0 / jn(k / 2 - n - 1, n)
    if abs(val - alt) > rtol * abs(val):
        raise FormMismatch(f"product form {val!r} vs integral form {alt!r}")
    return val


def wallach_admissible(k: float, n: int, eps: float = 1e-12) -> bool:
    """Membership in the admissible set {0, 1, ..., n-1} union (n-1, inf)."""
    if k > n - 1 + eps:
        return True
    if k < -eps:
        return False
    nearest = round(k)
    return abs(k - nearest) <= eps and 0 <= nearest <= n - 1


def _require_even_int(k, unchecked_branch: bool):
    if unchecked_branch:
        return float(k)
    ki = int(round(float(k)))
    if abs(k - ki) > 1e-12 or ki % 2 != 0:
        raise ValueError(
            "k must be an even integer (pass unchecked_branch=True to override)"
        )
    return float(ki)


def sp_rep_apply(
    g: SpElement, k, f, w: np.ndarray, unchecked_branch: bool = False
) -> complex:
    """Multiplier representation ``det(a - w conj(b))^{-k/2} f(g^-1 . w)``.

    ``k`` must be an even integer unless ``unchecked_branch`` is set, in which
    case the principal branch of the determinant power is used without any
    single-valuedness guarantee.
    """
    k = _require_even_int(k, unchecked_branch)
    w = as_cmat(w)
    den = g.a - w @ g.b.conj()
    arg = _inv(den, "a - w conj(b)") @ (-g.b + w @ g.a)
    return detpow(den, -k / 2) * f(0.5 * (arg + arg.T))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_symmetric(n: int, scale: float, rng) -> np.ndarray:
    rng = _as_rng(rng)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (m + m.T)


def random_siegel_point(n: int, scale: float, rng) -> np.ndarray:
    """Interior domain point obtained from a random symmetric generator."""
    return w_of_z(random_symmetric(n, scale, rng))


def sp_random(n: int, scale: float, rng) -> SpElement:
    """Random group element by Cartan synthesis (exact membership).

    A symmetric generator with Gaussian entries of size ``scale`` and a Haar
    unitary from QR orthonormalization are assembled via
    :func:`cartan_synthesize`.  Deterministic for a seeded generator.
    """
    rng = _as_rng(rng)
    z = random_symmetric(n, scale, rng)
    q = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    v, r = np.linalg.qr(q)
    v = v * (np.diag(r) / np.abs(np.diag(r)))
    return cartan_synthesize(z, v)
