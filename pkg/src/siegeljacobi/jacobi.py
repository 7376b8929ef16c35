"""The Jacobi group: phase-space translations semidirect the symplectic group.

Elements are triples ``(g, alpha, t)`` with ``g`` a symplectic block pair,
``alpha`` a complex translation vector and ``t`` a central parameter.  The
group acts holomorphically on points ``(z, W)`` of C^n x D_n; the action,
its multiplier cocycle (in two independent closed forms), the reproducing
kernel, the Kahler potential and two-form, the invariant volume density,
the normalization constant of the resolution of unity, and Monte-Carlo
machinery for the weighted inner product all live here.

Conventions resolved against the truncated Fock-space oracle (see
``fockoracle``): the action is a left action for the composition law as
implemented, and the central parameter enters the full cocycle as the phase
``exp(i t)`` (unit central charge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matfun, symplectic
from .errors import OutOfDomain, Singular
from .matfun import DEFAULT_TOL, as_cmat, detpow
from .symplectic import SpElement, sp_compose, sp_identity, sp_inverse, sym_index_pairs

__all__ = [
    "CSPoint",
    "cs_point",
    "JacobiElement",
    "CocycleData",
    "MeasureConstants",
    "CENTRAL_CHARGE",
    "cs_coords",
    "cs_from_coords",
    "alpha_action",
    "alpha_action_inv",
    "jacobi_identity_element",
    "jacobi_compose",
    "jacobi_inverse",
    "act",
    "lambda_cocycle",
    "lambda_full",
    "lambda_cocycle_ez",
    "kernel",
    "kahler_potential",
    "kahler_form",
    "density",
    "measure_constants",
    "sample_base_measure",
    "sample_arrays_n1",
    "mc_inner_product_n1",
    "reproduce_check",
    "pik_apply",
]

#: Central charge fixing how the parameter t enters the cocycle phase.
#: Scanned over {+-1, +-2} once against the Fock oracle; +1 is exactly
#: multiplicative for the composition law below.
CENTRAL_CHARGE = 1.0


@dataclass(frozen=True)
class CSPoint:
    """Point ``(z, W)`` of the coherent-state manifold C^n x D_n."""

    z: np.ndarray
    W: np.ndarray

    @property
    def n(self) -> int:
        return len(self.z)

    def to_json(self) -> dict:
        return {
            "z": [[c.real, c.imag] for c in self.z],
            "W": matfun.mat_to_json(self.W),
        }

    @staticmethod
    def from_json(d: dict) -> "CSPoint":
        z = np.array([re + 1j * im for re, im in d["z"]], dtype=complex)
        return CSPoint(z=z, W=matfun.mat_from_json(d["W"]))


def cs_point(z, W, tol: float = DEFAULT_TOL) -> CSPoint:
    """Validated constructor: ``W`` must be an interior domain point."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    W = as_cmat(W)
    if not matfun.is_siegel(W, tol=tol):
        raise OutOfDomain("W is not an interior point of the domain")
    return CSPoint(z=z, W=W)


@dataclass(frozen=True)
class JacobiElement:
    """Group element ``(g, alpha, t)``."""

    g: SpElement
    alpha: np.ndarray
    t: float = 0.0

    @property
    def n(self) -> int:
        return self.g.n

    def to_json(self) -> dict:
        return {
            "g": self.g.to_json(),
            "alpha": [[c.real, c.imag] for c in self.alpha],
            "t": self.t,
        }

    @staticmethod
    def from_json(d: dict) -> "JacobiElement":
        alpha = np.array([re + 1j * im for re, im in d["alpha"]], dtype=complex)
        return JacobiElement(
            g=SpElement.from_json(d["g"]), alpha=alpha, t=float(d.get("t", 0.0))
        )


@dataclass(frozen=True)
class CocycleData:
    """Image point, auxiliary vectors and multiplier of one group action."""

    z1: np.ndarray
    W1: np.ndarray
    x: np.ndarray
    y: np.ndarray
    lam: complex


@dataclass(frozen=True)
class MeasureConstants:
    """Normalization data of the resolution of unity."""

    n: int
    k: float
    p: float
    Lambda: float


def jacobi_identity_element(n: int) -> JacobiElement:
    return JacobiElement(g=sp_identity(n), alpha=np.zeros(n, dtype=complex), t=0.0)


def cs_coords(x: CSPoint) -> np.ndarray:
    """Flatten a point to its independent holomorphic coordinates.

    Ordering matches :func:`kahler_form`: ``z_1..z_n`` then ``w_ij`` (i<=j).
    """
    return np.concatenate(
        [x.z, np.array([x.W[i, j] for i, j in sym_index_pairs(x.n)])]
    )


def cs_from_coords(coords: np.ndarray, n: int) -> CSPoint:
    """Inverse of :func:`cs_coords`."""
    z = np.asarray(coords[:n], dtype=complex)
    w = np.zeros((n, n), dtype=complex)
    for c, (i, j) in enumerate(sym_index_pairs(n)):
        w[i, j] = coords[n + c]
        w[j, i] = coords[n + c]
    return CSPoint(z=z, W=w)


def alpha_action(g: SpElement, alpha: np.ndarray) -> np.ndarray:
    """Natural action on translations: ``g . alpha = a alpha + b conj(alpha)``."""
    return g.a @ alpha + g.b @ alpha.conj()


def alpha_action_inv(g: SpElement, alpha: np.ndarray) -> np.ndarray:
    """Inverse action ``g^-1 . alpha = a* alpha - b^T conj(alpha)``."""
    return g.a.conj().T @ alpha - g.b.T @ alpha.conj()


def theta_hw(a2: np.ndarray, a1: np.ndarray) -> float:
    """Symplectic phase ``Im(a2 . conj(a1))`` of the translation sector."""
    return float(np.imag(np.sum(a2 * a1.conj())))


def jacobi_compose(h1: JacobiElement, h2: JacobiElement) -> JacobiElement:
    """Composition law.

    ``(g1, a1, t1) o (g2, a2, t2) = (g1 g2, g2^-1.a1 + a2,
    t1 + t2 + Im(g2^-1.a1 conj(a2)))``.  The action :func:`act` is a left
    action for this law.
    """
    if h1.n != h2.n:
        raise ValueError("dimension mismatch")
    moved = alpha_action_inv(h2.g, h1.alpha)
    return JacobiElement(
        g=sp_compose(h1.g, h2.g),
        alpha=moved + h2.alpha,
        t=h1.t + h2.t + theta_hw(moved, h2.alpha),
    )


def jacobi_inverse(h: JacobiElement) -> JacobiElement:
    """Inverse element ``(g^-1, -g.alpha, -t)``."""
    return JacobiElement(
        g=sp_inverse(h.g), alpha=-alpha_action(h.g, h.alpha), t=-h.t
    )


def act(h: JacobiElement, x: CSPoint) -> CSPoint:
    """Holomorphic action on the manifold.

    ``z1 = (W b* + a*)^-1 (z + alpha - W conj(alpha))`` and ``W1 = g . W``.
    """
    g = h.g
    den = x.W @ g.b.conj().T + g.a.conj().T
    try:
        z1 = np.linalg.solve(den, x.z + h.alpha - x.W @ h.alpha.conj())
    except np.linalg.LinAlgError as exc:
        raise Singular("W b* + a* is singular") from exc
    w1 = symplectic.moebius(g, x.W, check=False)
    return CSPoint(z=z1, W=w1)


def lambda_cocycle(
    h: JacobiElement, x: CSPoint, k, unchecked_branch: bool = False
) -> CocycleData:
    """Multiplier of the coherent-state orbit map, first closed form.

    Returns the image point ``(z1, W1)`` together with the auxiliary vectors
    ``x = (1 - W Wbar)^-1 (z + W zbar)`` and
    ``y = a(alpha + x) + b(conj(alpha) + conj(x))`` and

        lam = det(W b* + a*)^{-k/2}
              * exp(<x, z>/2 - <y, z1>/2) * exp(i Im(alpha . conj(x))),

    where ``<u, v> = conj(u)^T v``.  The central parameter of ``h`` is not
    included; see :func:`lambda_full`.

    ``k`` must be an even integer unless ``unchecked_branch`` is set.
    """
    k = symplectic._require_even_int(k, unchecked_branch)
    g = h.g
    n = x.n
    w = x.W
    m = np.linalg.inv(np.eye(n) - w @ w.conj().T)
    xv = m @ (x.z + w @ x.z.conj())
    yv = g.a @ (h.alpha + xv) + g.b @ (h.alpha.conj() + xv.conj())
    den = w @ g.b.conj().T + g.a.conj().T
    image = act(h, x)
    lam = (
        detpow(den, -k / 2)
        * np.exp(0.5 * np.sum(xv.conj() * x.z) - 0.5 * np.sum(yv.conj() * image.z))
        * np.exp(1j * theta_hw(h.alpha, xv))
    )
    return CocycleData(z1=image.z, W1=image.W, x=xv, y=yv, lam=complex(lam))


def lambda_full(
    h: JacobiElement, x: CSPoint, k, unchecked_branch: bool = False
) -> complex:
    """Cocycle including the central phase ``exp(i c t)``.

    Exactly multiplicative along :func:`jacobi_compose`:
    ``lambda_full(h1 o h2, x) = lambda_full(h1, h2.x) lambda_full(h2, x)``.
    """
    data = lambda_cocycle(h, x, k, unchecked_branch=unchecked_branch)
    return data.lam * complex(np.exp(1j * CENTRAL_CHARGE * h.t))


def lambda_cocycle_ez(
    h: JacobiElement, x: CSPoint, k, unchecked_branch: bool = False, rtol: float = 1e-9
) -> complex:
    """Multiplier via the second closed form (quadratic-exponent route).

    Written with ``T = conj(b)^-1 conj(a)`` the exponent is

        2 lam1 = z^T (W + T)^-1 z + (alpha^T + conj(alpha)^T T)(W + T)^-1 (2z + z0)

    with ``z0 = alpha - W conj(alpha)``, and ``lam = det(W b* + a*)^{-k/2}
    exp(-lam1)``.  The implementation uses the algebraically simplified
    variant that stays finite as ``b -> 0``:

        2 lam1 = z^T (abar + bbar W)^-1 bbar z
               + alpha^T (abar + bbar W)^-1 bbar (2z + z0)
               + conj(alpha)^T (1 + W abar^-1 bbar)^-1 (2z + z0)

    and cross-checks the literal ``T``-form whenever ``b`` is invertible.

    Raises
    ------
    Singular
        If neither route is computable.
    """
    k = symplectic._require_even_int(k, unchecked_branch)
    g = h.g
    w = x.W
    z = x.z
    ab = g.a.conj()
    bb = g.b.conj()
    z0 = h.alpha - w @ h.alpha.conj()
    rhs = 2 * z + z0
    try:
        core = np.linalg.solve(ab + bb @ w, bb)
        tail = np.linalg.solve(np.eye(x.n) + w @ np.linalg.solve(ab, bb), rhs)
    except np.linalg.LinAlgError as exc:
        raise Singular("b -> 0 safe route is not computable") from exc
    two_lam1 = (
        z @ core @ z + h.alpha @ core @ rhs + h.alpha.conj() @ tail
    )
    lam = detpow(w @ g.b.conj().T + g.a.conj().T, -k / 2) * np.exp(-0.5 * two_lam1)

    # literal route with T = conj(b)^-1 conj(a), defined when b is invertible
    if abs(np.linalg.det(bb)) > 1e-12:
        t = np.linalg.solve(bb, ab)
        inv_wt = np.linalg.inv(w + t)
        two_alt = z @ inv_wt @ z + (h.alpha + t.T @ h.alpha.conj()) @ inv_wt @ rhs
        alt = detpow(w @ g.b.conj().T + g.a.conj().T, -k / 2) * np.exp(-0.5 * two_alt)
        if abs(alt - lam) > rtol * max(1.0, abs(lam)):
            raise Singular(
                f"the two quadratic-exponent routes disagree: {lam!r} vs {alt!r}"
            )
    return complex(lam)


def kernel(x: CSPoint, y: CSPoint, k: float) -> complex:
    """Reproducing kernel ``(e_x, e_y)``, conjugate-linear in ``x``.

    With ``U = (1 - W_y conj(W_x))^-1``,

        K = det(U)^{k/2} exp((2 <z_x, U z_y> + <W_x conj(z_y), U z_y>
                              + <z_x, U W_y conj(z_x)>) / 2).

    Positive on the diagonal; ``K(x, y) = conj(K(y, x))``.
    """
    n = x.n
    u = np.linalg.inv(np.eye(n) - y.W @ x.W.conj())
    expo = (
        2.0 * np.sum(x.z.conj() * (u @ y.z))
        + np.sum((x.W @ y.z.conj()).conj() * (u @ y.z))
        + np.sum(x.z.conj() * (u @ y.W @ x.z.conj()))
    )
    return complex(detpow(u, k / 2) * np.exp(0.5 * expo))


def kahler_potential(x: CSPoint, k: float) -> float:
    """Logarithm of the diagonal kernel.

    ``f = -(k/2) log det(1 - W Wbar) + <z, M z> + Re(z^T Wbar M z)`` with
    ``M = (1 - W Wbar)^-1``; real by construction.
    """
    n = x.n
    eye = np.eye(n)
    m = np.linalg.inv(eye - x.W @ x.W.conj())
    val = -0.5 * k * matfun.principal_logdet(eye - x.W @ x.W.conj()).real
    val += float(np.real(np.sum(x.z.conj() * (m @ x.z))))
    val += float(np.real(x.z @ x.W.conj() @ m @ x.z))
    return float(val)


def _kahler_blocks(x: CSPoint, k: float):
    """Closed-form pieces shared by the Hessian assembly."""
    n = x.n
    eye = np.eye(n)
    m = np.linalg.inv(eye - x.W @ x.W.conj())
    mb = m.conj()
    xv = m @ (x.z + x.W @ x.z.conj())
    q = m @ x.z
    s = x.W.conj() @ q
    r = mb @ x.z.conj()
    p = x.W @ r
    return m, mb, xv, q, s, r, p


def kahler_form(x: CSPoint, k: float) -> np.ndarray:
    """Hermitian coefficient matrix of the invariant two-form.

    Coordinates are ``(z_1..z_n, w_ij i<=j)``; entry ``(a, b)`` is the mixed
    Wirtinger Hessian of :func:`kahler_potential`.  The closed form used here
    was derived from the potential directly and is validated against finite
    differences; positive definite for ``k > 0``.
    """
    n = x.n
    m, mb, xv, q, s, r, p = _kahler_blocks(x, k)
    pairs = sym_index_pairs(n)
    dim = n + len(pairs)
    h = np.zeros((dim, dim), dtype=complex)
    h[:n, :n] = m.T

    xbar = xv.conj()
    for c, (kk, ll) in enumerate(pairs):
        for i in range(n):
            fzw = m[i, kk] * xbar[ll]
            if kk != ll:
                fzw += m[i, ll] * xbar[kk]
            h[i, n + c] = np.conj(fzw)
            h[n + c, i] = fzw

    def full(a, b, c, d):
        t = 0.5 * k * mb[b, c] * m[d, a]
        t += mb[a, c] * (p[d] * (s[b] + 0.5 * r[b]) + 0.5 * q[d] * s[b])
        t += mb[b, c] * (q[d] * (r[a] + 0.5 * s[a]) + 0.5 * p[d] * r[a])
        return t

    for c1, (a, b) in enumerate(pairs):
        for c2, (cc, d) in enumerate(pairs):
            tot = full(a, b, cc, d)
            if a != b:
                tot += full(b, a, cc, d)
            if cc != d:
                tot += full(a, b, d, cc)
                if a != b:
                    tot += full(b, a, d, cc)
            h[n + c1, n + c2] = tot
    return h


def density(x: CSPoint, n: int | None = None) -> float:
    """Volume density ``det(1 - W Wbar)^{-(n+2)}``; depends on ``W`` only."""
    if n is None:
        n = x.n
    return float(
        detpow(np.eye(n) - x.W @ x.W.conj(), -(n + 2)).real
    )


def _lambda_product_form(n: int, k: float) -> float:
    """Product form of the normalization constant.

    Equivalent to ``pi^-n / J_n((k-3)/2 - n)``; reduces to
    ``(k-3) / (2 pi^2)`` at n = 1.
    """
    log_val = -n * math.log(2.0) - n * (n + 3) / 2 * math.log(math.pi)
    for i in range(1, n + 1):
        log_val += math.lgamma(k + i - n - 2) - math.lgamma(k - 3 - 2 * (n - i))
    return math.exp(log_val)


def measure_constants(n: int, k: float, rtol: float = 1e-12) -> MeasureConstants:
    """Normalization data for the resolution of unity.

    ``p = (k-3)/2 - n`` (which sits half a step below the group-only exponent
    ``k/2 - n - 1``) and ``Lambda = pi^-n / J_n(p)``; the independent product
    form must agree to ``rtol``.

    Raises
    ------
    OutOfDomain
        For ``k <= 2n + 1`` (p <= -1).
    """
    p = (k - 3) / 2 - n
    if p <= -1:
        raise OutOfDomain(f"need k > 2n + 1 = {2 * n + 1}, got {k}")
    assert abs((p - (k / 2 - n - 1)) + 0.5) < 1e-14
    lam = math.pi ** (-n) / symplectic.jn(p, n)
    alt = _lambda_product_form(n, k)
    if abs(lam - alt) > rtol * abs(lam):
        raise OutOfDomain(f"normalization routes disagree: {lam!r} vs {alt!r}")
    return MeasureConstants(n=n, k=float(k), p=p, Lambda=lam)


_CHUNK = 1 << 15  # fixed substream size; estimates are worker-count invariant


def sample_arrays_n1(k: float, count: int, seed: int):
    """Vectorized weighted sampler for the n = 1 base measure.

    Returns ``(w, z, weight)`` arrays of length ``count``.  ``w`` is uniform
    on the box [-1, 1]^2 (weight 0 outside the disk), ``z | w`` is drawn from
    the exact Gaussian with the diagonal-kernel exponent, and the weight
    carries the closed-form Gaussian normalizer ``pi sqrt(1 - |w|^2)`` so that
    ``mean(weight * f)`` estimates ``Lambda * integral(f Q K^-1)``.

    Counter-based substreams of fixed size make the result deterministic in
    ``(seed, count)`` and independent of any worker partitioning.
    """
    consts = measure_constants(1, k)
    p = consts.p
    nchunks = (count + _CHUNK - 1) // _CHUNK
    ws, zs, wts = [], [], []
    for ci in range(nchunks):
        mcount = min(_CHUNK, count - ci * _CHUNK)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(ci,)))
        # always draw full chunks so shorter runs are prefixes of longer ones
        wre = rng.uniform(-1.0, 1.0, _CHUNK)[:mcount]
        wim = rng.uniform(-1.0, 1.0, _CHUNK)[:mcount]
        r2 = wre**2 + wim**2
        inside = r2 < 1.0
        det = np.where(inside, 1.0 - r2, 1.0)
        weight = np.where(inside, 4.0 * consts.Lambda * math.pi * det**p, 0.0)
        # z | w: exponent F = m[(1+u) x1^2 + (1-u) x2^2 + 2 v x1 x2], m = 1/det
        mm = 1.0 / det
        a11 = 2 * mm * (1 + wre)
        a22 = 2 * mm * (1 - wre)
        a12 = 2 * mm * wim
        l11 = np.sqrt(a11)
        l21 = a12 / l11
        l22 = np.sqrt(np.maximum(a22 - l21**2, 1e-300))
        xi = rng.standard_normal((2, _CHUNK))[:, :mcount]
        x2 = xi[1] / l22
        x1 = (xi[0] - l21 * x2) / l11
        z = np.where(inside, x1 + 1j * x2, 0.0)
        ws.append(wre + 1j * wim)
        zs.append(z)
        wts.append(weight)
    return np.concatenate(ws), np.concatenate(zs), np.concatenate(wts)


def sample_base_measure(n: int, k: float, count: int, seed: int):
    """Stream of ``(CSPoint, weight)`` samples of the base measure.

    Weighted sums over the stream estimate ``Lambda * integral(. Q K^-1)``
    with respect to Lebesgue measure on C^n x D_n.  Only n = 1 is vectorized;
    the general-n path draws the ``z`` Gaussian through a per-sample real
    covariance factorization.
    """
    if n == 1:
        w, z, wt = sample_arrays_n1(k, count, seed)
        for i in range(count):
            yield CSPoint(z=z[i : i + 1], W=w[i : i + 1, None]), float(wt[i])
        return
    consts = measure_constants(n, k)
    pairs = sym_index_pairs(n)
    vol_box = 2.0 ** (2 * len(pairs))
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    eye = np.eye(n)
    for _ in range(count):
        w = np.zeros((n, n), dtype=complex)
        for (i, j) in pairs:
            w[i, j] = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            w[j, i] = w[i, j]
        gram = eye - w @ w.conj().T
        evmin = np.linalg.eigvalsh(gram).min()
        if evmin <= 0:
            yield CSPoint(z=np.zeros(n, complex), W=np.zeros((n, n), complex)), 0.0
            continue
        det = float(np.linalg.det(gram).real)
        # the Gaussian normalizer's det^(1/2) is already folded into p
        weight = vol_box * consts.Lambda * math.pi**n * det**consts.p
        # assemble the real quadratic form of F by polarization and factorize
        m = np.linalg.inv(gram)

        def fval(zv):
            t = np.sum(zv.conj() * (m @ zv)) + zv @ w.conj() @ m @ zv
            return float(np.real(t))

        dim = 2 * n
        amat = np.zeros((dim, dim))
        basis = [np.eye(n, dtype=complex)[i] * (1 if c == 0 else 1j)
                 for c in range(2) for i in range(n)]
        for i in range(dim):
            for j in range(dim):
                amat[i, j] = 0.5 * (
                    fval(basis[i] + basis[j]) - fval(basis[i]) - fval(basis[j])
                )
        amat = amat + amat.T
        lmat = np.linalg.cholesky(amat)
        xi = rng.standard_normal(dim)
        zeta = np.linalg.solve(lmat.T, xi)
        z = zeta[:n] + 1j * zeta[n:]
        # weight uses the closed normalizer; assert it matches the factorization
        norm_closed = math.pi**n * math.sqrt(det)
        norm_chol = (2 * math.pi) ** n / math.sqrt(np.linalg.det(amat))
        assert abs(norm_closed - norm_chol) < 1e-8 * norm_closed
        yield CSPoint(z=z, W=w), float(weight)


def mc_inner_product_n1(f, g, k: float, count: int, seed: int):
    """Monte-Carlo estimate of the weighted inner product ``(f, g)`` at n=1.

    Returns ``(estimate, standard_error)``.
    """
    w, z, wt = sample_arrays_n1(k, count, seed)
    vals = wt * np.conj(f(z, w)) * g(z, w)
    est = complex(vals.mean())
    se = float(np.abs(vals - est).std() / math.sqrt(len(vals)))
    return est, se


def reproduce_check(f, x0: CSPoint, k: float, samples: int, seed: int = 2024):
    """Monte-Carlo test of the reproducing property at n = 1.

    ``rhs = mean(weight * K(y, x0) * f(y))`` should reproduce
    ``lhs = f(x0)``; returns ``(lhs, rhs, relerr)``.

    Raises
    ------
    OutOfDomain
        If called with n != 1 or k <= 3.
    """
    if x0.n != 1:
        raise OutOfDomain("reproduce_check is implemented for n = 1 only")
    if k <= 3:
        raise OutOfDomain("need k > 3")
    w, z, wt = sample_arrays_n1(k, samples, seed)
    z0 = complex(x0.z[0])
    w0 = complex(x0.W[0, 0])
    u = 1.0 / (1.0 - w0 * np.conj(w))
    expo = (
        2.0 * np.conj(z) * u * z0
        + np.conj(w * np.conj(z0)) * u * z0
        + np.conj(z) * u * w0 * np.conj(z)
    )
    kv = u ** (k / 2) * np.exp(0.5 * expo)
    rhs = complex(np.mean(wt * kv * f(z, w)))
    lhs = complex(f(np.array([z0]), np.array([w0]))[0])
    relerr = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    return lhs, rhs, relerr


def pik_apply(
    h: JacobiElement, k, f, x: CSPoint, unchecked_branch: bool = False
) -> complex:
    """Representation on holomorphic functions.

    ``(pi(h) f)(x) = lambda(h^-1, x) f(h^-1 . x)`` with the full cocycle
    (central phase included); a homomorphism along :func:`jacobi_compose`.
    """
    hinv = jacobi_inverse(h)
    lam = lambda_full(hinv, x, k, unchecked_branch=unchecked_branch)
    return lam * f(act(hinv, x))
