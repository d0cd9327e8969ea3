"""Dense complex matrix helpers: companion matrices, characteristic
polynomials, the anticommutator equation, regularity and rank tests."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import get_tol
from .errors import InvalidModulus, NoSolution, NormTooLarge, NotCanonical
from .poly import Polynomial

__all__ = [
    "companion",
    "companion_poly",
    "is_companion",
    "char_poly",
    "char_poly_faddeev",
    "AffineSolution",
    "anticommutator_solve",
    "is_regular",
    "matrix_exp",
    "rank",
    "poly_of_matrix",
    "sup",
]

# exp overflows past ~709; leave headroom for the Pade scaling steps.
_EXP_NORM_LIMIT = 600.0


def sup(M):
    """Entrywise maximum modulus (the norm used for every residual)."""
    M = np.asarray(M)
    return float(np.abs(M).max()) if M.size else 0.0


def companion(q, tol=None):
    """Companion matrix of a monic ``q`` of degree n.

    Ones on the subdiagonal, data in the last column: with
    ``q = z^n - sum_i s_i z^(n-i)`` the last column reads
    ``(s_n, ..., s_1)`` from top to bottom. Column j is the image of
    ``z^j`` under multiplication by z in ``C[z]/(q)``.
    """
    q = q if isinstance(q, Polynomial) else Polynomial(q)
    if q.degree < 1 or not q.is_monic(tol):
        raise InvalidModulus("companion matrix needs a monic polynomial of degree >= 1")
    n = q.degree
    S = np.zeros((n, n), dtype=complex)
    S[np.arange(1, n), np.arange(n - 1)] = 1.0
    S[:, -1] = -q.coeffs[:-1]
    return S


def is_companion(S, tol=None):
    S = np.asarray(S)
    n = S.shape[0]
    if S.ndim != 2 or S.shape != (n, n):
        return False
    ref = np.zeros((n, n), dtype=complex)
    ref[np.arange(1, n), np.arange(n - 1)] = 1.0
    ref[:, -1] = S[:, -1]
    return sup(S - ref) <= get_tol(tol)


def companion_poly(S, tol=None):
    """Read the monic polynomial back off a companion matrix."""
    if not is_companion(S, tol):
        raise NotCanonical("matrix is not in companion form")
    S = np.asarray(S, dtype=complex)
    return Polynomial(np.concatenate([-S[:, -1], [1.0]]))


def _hessenberg_char_poly(H):
    """Characteristic polynomial of an upper Hessenberg matrix by the
    standard three-term expansion along the last column."""
    n = H.shape[0]
    ps = [Polynomial([1.0])]
    z = Polynomial.z()
    for k in range(n):
        pk = (z - H[k, k]) * ps[k]
        prod = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            prod *= H[i + 1, i]
            if prod == 0:
                break
            pk = pk - (H[i, k] * prod) * ps[i]
        ps.append(pk)
    return ps[n]


def char_poly(M):
    """``det(z - M)`` as a monic polynomial.

    Matrices already in upper Hessenberg form (companion matrices in
    particular) are expanded directly, which reproduces companion data
    exactly; everything else is first reduced with a unitary Hessenberg
    similarity.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n == 0:
        return Polynomial([1.0])
    if np.any(np.tril(M, -2)):
        M = scipy.linalg.hessenberg(M)
    p = _hessenberg_char_poly(M)
    return Polynomial(np.concatenate([p.coeffs[:-1], [1.0]]))


def char_poly_faddeev(M):
    """Faddeev-LeVerrier recursion; kept as an independent check of
    :func:`char_poly` (it loses accuracy quickly as n grows)."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    Mk = np.zeros_like(M)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + c[n - k + 1] * eye
        c[n - k] = -np.trace(M @ Mk) / k
    return Polynomial(c)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(kernel)`` of a linear matrix equation."""

    particular: np.ndarray
    kernel: tuple
    residual: float

    @property
    def dimension(self):
        return len(self.kernel)

    def point(self, coeffs):
        Y = self.particular.copy()
        for a, K in zip(coeffs, self.kernel):
            Y = Y + a * K
        return Y


def anticommutator_solve(S, C, tol=None):
    """All solutions Y of ``S Y + Y S = C``.

    The n^2 x n^2 system ``(I kron S + S^T kron I) vec(Y) = vec(C)``
    (column-major vec) is solved by least squares; the kernel comes from
    the singular vectors with singular value below ``tol * sigma_max``.
    """
    S = np.asarray(S, dtype=complex)
    n = S.shape[0]
    C = np.asarray(C, dtype=complex)
    if C.ndim == 0:
        C = C * np.eye(n)
    tol = get_tol(tol)
    K = np.kron(np.eye(n), S) + np.kron(S.T, np.eye(n))
    rhs = C.reshape(-1, order="F")
    U, sv, Vh = np.linalg.svd(K)
    smax = sv[0] if sv.size else 0.0
    cutoff = max(tol * smax, tol)
    keep = sv > cutoff
    coeff = (U[:, keep].conj().T @ rhs) / sv[keep]
    vecY = Vh[keep].conj().T @ coeff
    Y = vecY.reshape(n, n, order="F")
    residual = sup(S @ Y + Y @ S - C)
    if residual > tol * (1.0 + sup(C)):
        raise NoSolution(f"SY + YS = C is inconsistent (residual {residual:.3e})")
    kernel = tuple(v.conj().reshape(n, n, order="F") for v in Vh[~keep])
    return AffineSolution(Y, kernel, residual)


def is_regular(M, trials=3, rng=None, tol=None):
    """Whether M admits a cyclic vector (minimal polynomial = char poly).

    For each of ``trials`` random start vectors an orthonormal Krylov basis
    is grown; M is regular as soon as one start vector spans all of C^n.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n == 1:
        return True
    tol = get_tol(tol)
    rng = np.random.default_rng(0) if rng is None else rng
    scale = max(np.linalg.norm(M, 2), 1.0)
    for _ in range(trials):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        Q = np.zeros((n, n), dtype=complex)
        Q[:, 0] = v / np.linalg.norm(v)
        for k in range(1, n):
            w = M @ Q[:, k - 1]
            for _rep in range(2):
                w = w - Q[:, :k] @ (Q[:, :k].conj().T @ w)
            nw = np.linalg.norm(w)
            if nw <= 1e3 * tol * scale:
                break
            Q[:, k] = w / nw
        else:
            return True
    return False


def matrix_exp(M):
    """Matrix exponential (scaling and squaring Pade, via SciPy).

    M is diagonally balanced first, so a large norm caused only by a
    diagonal similarity (as in ``D M D^-1``) is not mistaken for overflow.
    """
    M = np.asarray(M, dtype=complex)
    if not M.size:
        return scipy.linalg.expm(M)
    B, T = scipy.linalg.matrix_balance(M, permute=False, separate=True)
    d = T[0]
    if np.linalg.norm(B, 1) > _EXP_NORM_LIMIT:
        raise NormTooLarge(f"norm {np.linalg.norm(B, 1):.3g} too large for exp")
    E = d[:, None] * scipy.linalg.expm(B) / d[None, :]
    if not np.all(np.isfinite(E)):
        raise NormTooLarge("matrix exponential overflowed")
    return E


def rank(M, tol=None, scale=None):
    """Number of singular values above ``tol * sigma_max``.

    With ``scale`` the threshold is ``tol * scale`` instead, which is the
    right choice when M is a difference of comparable matrices and may be
    zero up to rounding.
    """
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    ref = sv[0] if scale is None else scale
    if ref == 0:
        return 0
    return int(np.sum(sv > get_tol(tol) * ref))


def poly_of_matrix(p, M):
    """Horner evaluation of a polynomial at a square matrix."""
    M = np.asarray(M, dtype=complex)
    out = np.zeros_like(M)
    eye = np.eye(M.shape[0])
    for a in p.coeffs[::-1]:
        out = out @ M + a * eye
    return out
