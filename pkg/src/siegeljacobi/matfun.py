"""Dense complex matrix primitives.

Everything downstream (group decompositions, kernels, measures) is built on a
small set of spectral operations for Hermitian matrices plus a principal
log-determinant.  Matrices are plain ``numpy`` arrays of ``complex``; the
shared JSON wire format is ``{"rows": n, "cols": m, "re": [...], "im": [...]}``
with row-major entry order.

Branch convention: every fractional determinant power goes through the
principal log-determinant.  Continuity is only guaranteed while the spectrum
of the argument stays off the negative real axis, which all interior-point
kernel evaluations satisfy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainViolation, NonHermitian, NoConvergence, NotSymmetric, Singular

DEFAULT_TOL = 1e-10


def as_cmat(entries) -> np.ndarray:
    """Coerce input to a 2-d complex array and check finiteness."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix has non-finite entries")
    return m


def mat_to_json(m: np.ndarray) -> dict:
    """Serialize a matrix to the shared JSON format (row-major)."""
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "re": m.real.ravel().tolist(),
        "im": m.imag.ravel().tolist(),
    }


def mat_from_json(d: dict) -> np.ndarray:
    """Inverse of :func:`mat_to_json`."""
    rows, cols = int(d["rows"]), int(d["cols"])
    re = np.asarray(d["re"], dtype=float).reshape(rows, cols)
    im = np.asarray(d["im"], dtype=float).reshape(rows, cols)
    return re + 1j * im


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    Attributes
    ----------
    evals : ndarray
        Real eigenvalues in ascending order.
    evecs : ndarray
        Unitary matrix whose columns are the eigenvectors.
    """

    evals: np.ndarray
    evecs: np.ndarray


def herm_eig(h: np.ndarray, tol: float = DEFAULT_TOL) -> HermEig:
    """Eigendecomposition of a Hermitian matrix with validation.

    Parameters
    ----------
    h : ndarray
        Square matrix, Hermitian within ``tol * ||h||``.
    tol : float
        Relative symmetry and reconstruction tolerance.

    Raises
    ------
    NonHermitian
        If the symmetry check fails.
    NoConvergence
        If the underlying QR iteration stalls.
    """
    h = as_cmat(h)
    if h.shape[0] != h.shape[1]:
        raise NonHermitian("matrix is not square")
    scale = max(np.linalg.norm(h), 1.0)
    if np.linalg.norm(h - h.conj().T) > tol * scale:
        raise NonHermitian(
            f"symmetry residual {np.linalg.norm(h - h.conj().T):.3e} exceeds tol"
        )
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise NoConvergence(str(exc)) from exc
    return HermEig(evals=evals, evecs=evecs)


def herm_func(h: np.ndarray, f, domain=None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix by spectral calculus.

    Parameters
    ----------
    h : ndarray
        Hermitian matrix.
    f : callable
        Scalar function applied to the eigenvalues (vectorized).
    domain : callable, optional
        Predicate on the eigenvalue array; a ``False`` anywhere raises
        :class:`DomainViolation` (e.g. ``arctanh`` needs eigenvalues < 1).

    Returns
    -------
    ndarray
        ``V f(diag(evals)) V*``; Hermitian whenever ``f`` is real valued.
    """
    dec = herm_eig(h, tol=tol)
    if domain is not None and not np.all(domain(dec.evals)):
        raise DomainViolation(
            f"eigenvalues {dec.evals} leave the domain of {getattr(f, '__name__', f)}"
        )
    fe = np.asarray(f(dec.evals))
    return (dec.evecs * fe) @ dec.evecs.conj().T


def _sqrt_series(t, small, f_small, f_large):
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    mask = np.abs(t) < small
    out[mask] = f_small(t[mask])
    out[~mask] = f_large(t[~mask])
    return out


def cosh_of_sqrt(t):
    """cosh(sqrt(t)) for t >= 0, stable near 0."""
    return _sqrt_series(
        t, 1e-12, lambda s: 1 + s / 2, lambda s: np.cosh(np.sqrt(np.maximum(s, 0.0)))
    )


def sinhc_of_sqrt(t):
    """sinh(sqrt(t))/sqrt(t), extended by 1 at t = 0."""
    return _sqrt_series(
        t,
        1e-10,
        lambda s: 1 + s / 6,
        lambda s: np.sinh(np.sqrt(np.maximum(s, 0.0))) / np.sqrt(np.maximum(s, 1e-300)),
    )


def tanhc_of_sqrt(t):
    """tanh(sqrt(t))/sqrt(t), extended by 1 at t = 0."""
    return _sqrt_series(
        t,
        1e-10,
        lambda s: 1 - s / 3,
        lambda s: np.tanh(np.sqrt(np.maximum(s, 0.0))) / np.sqrt(np.maximum(s, 1e-300)),
    )


def arctanhc_of_sqrt(t):
    """arctanh(sqrt(t))/sqrt(t), extended by 1 at t = 0; needs t < 1."""
    return _sqrt_series(
        t,
        1e-10,
        lambda s: 1 + s / 3,
        lambda s: np.arctanh(np.sqrt(np.clip(s, 0.0, 1.0 - 1e-300)))
        / np.sqrt(np.maximum(s, 1e-300)),
    )


def check_symmetric(z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate complex symmetry ``z == z^T`` and return ``z``."""
    z = as_cmat(z)
    scale = max(np.linalg.norm(z), 1.0)
    if np.linalg.norm(z - z.T) > tol * scale:
        raise NotSymmetric(f"symmetry residual {np.linalg.norm(z - z.T):.3e}")
    return z


def cartan_blocks(z: np.ndarray, tol: float = DEFAULT_TOL):
    """Hyperbolic blocks of the exponential of an off-diagonal generator.

    For symmetric ``z`` returns ``(m, n)`` with ``m = cosh(sqrt(z zbar))`` and
    ``n = sinhc(sqrt(z zbar)) z``; the product ``z zbar`` equals ``z z*`` so
    the spectral calculus applies.  The pair satisfies ``m m* - n n* = 1``.

    Raises
    ------
    NotSymmetric
        If ``z`` is not complex-symmetric.
    """
    z = check_symmetric(z, tol=tol)
    h = z @ z.conj().T
    m = herm_func(h, cosh_of_sqrt, tol=tol)
    n = herm_func(h, sinhc_of_sqrt, tol=tol) @ z
    return m, n


def principal_logdet(m: np.ndarray, singular_rtol: float = 1e-13) -> complex:
    """Principal log-determinant via LU with pivot-phase accumulation.

    ``exp(result) == det(m)``; the imaginary part is the sum of the principal
    logarithms of the diagonal of the U factor plus the permutation phase.

    Raises
    ------
    Singular
        If any pivot falls below ``singular_rtol`` times the matrix scale.
    """
    m = as_cmat(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    diag = np.diag(lu)
    scale = max(np.abs(m).max(), 1.0)
    if np.any(np.abs(diag) <= singular_rtol * scale):
        raise Singular(f"pivot magnitude {np.abs(diag).min():.3e} below threshold")
    swaps = int(np.sum(piv != np.arange(len(piv))))
    out = complex(np.sum(np.log(diag.astype(complex))))
    if swaps % 2:
        out += 1j * np.pi
    return out


def detpow(m: np.ndarray, s: float) -> complex:
    """``det(m)**s`` on the principal branch: ``exp(s * principal_logdet(m))``."""
    return complex(np.exp(s * principal_logdet(m)))


def is_siegel(w: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Predicate for membership in the bounded symmetric domain.

    True iff ``w`` is complex-symmetric within ``tol`` and the smallest
    eigenvalue of ``1 - w w*`` exceeds ``tol``.
    """
    w = as_cmat(w)
    if w.shape[0] != w.shape[1]:
        return False
    scale = max(np.linalg.norm(w), 1.0)
    if np.linalg.norm(w - w.T) > tol * scale:
        return False
    g = np.eye(w.shape[0]) - w @ w.conj().T
    return bool(np.linalg.eigvalsh(g).min() > tol)
