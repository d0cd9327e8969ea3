"""Twistor chart transitions.

Over the overlap of the charts ``zeta != infinity`` and ``zeta != 0`` of
the projective line, points of ``N_n`` and slice points are glued by

    zeta~ = 1/zeta,  S~ = D S D^-1 / zeta^2,  g~ = g exp(-S/zeta) D^-1,
    Y~ = D exp(S/zeta) (Y/zeta^2) exp(-S/zeta) D^-1,

with ``D = D(zeta) = diag(zeta^(1-n), zeta^(3-n), ..., zeta^(n-1))``. The
orbit eigenvalues are sections of O(2), ``mu(zeta) = mu + 2 r zeta -
conj(mu) zeta^2``, and become ``mu(zeta)/zeta^2`` in the other chart.

Identities are only asserted on a band around ``|zeta| = 1``; far from it
the exponentials ``exp(+-2 lambda/zeta)`` are badly conditioned.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ChartBoundary, NotCanonical
from .linalg import is_companion, matrix_exp, sup
from .slices import OrbitSpec, SlicePoint, check_canonical

__all__ = [
    "MuSection",
    "TwistorChartPoint",
    "mu_eval",
    "mu_transport",
    "antipodal_residual",
    "d_matrix",
    "transition_N",
    "inverse_transition_N",
    "transition_SY",
    "inverse_transition_SY",
    "transport_slice",
    "canonical_transition",
    "cocycle_residual_N",
    "cocycle_residual_SY",
    "d2_chart_transition",
    "d1_chart_transition",
    "d1_uv",
    "d1_yz_from_uv",
    "d1_basis_matrix",
    "quadric_checks",
]


@dataclass(frozen=True)
class MuSection:
    """The O(2) section ``mu + 2 r zeta - conj(mu) zeta^2``."""

    mu: complex
    r: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "r", float(self.r))

    def coefficients(self):
        return np.array([self.mu, 2 * self.r, -np.conj(self.mu)])


@dataclass(frozen=True)
class TwistorChartPoint:
    """A sampled point of a twistor line: chart coordinate plus payload."""

    zeta: complex
    payload: tuple


def mu_eval(ms, zeta):
    return ms.mu + 2 * ms.r * zeta - np.conj(ms.mu) * zeta**2


def mu_transport(ms, zeta):
    """Value in the other chart, ``mu(zeta)/zeta^2``."""
    _check_zeta(zeta)
    return mu_eval(ms, zeta) / zeta**2


def antipodal_residual(ms, zeta):
    """``|mu(-1/conj(zeta)) + conj(mu(zeta))/conj(zeta)^2|``.

    Vanishes identically for real sections of O(2).
    """
    _check_zeta(zeta)
    zb = np.conj(zeta)
    return abs(mu_eval(ms, -1 / zb) + np.conj(mu_eval(ms, zeta)) / zb**2)


def _check_zeta(zeta):
    if zeta == 0 or not np.isfinite(zeta):
        raise ChartBoundary("zeta must be finite and non-zero on the chart overlap")


def d_matrix(n, zeta):
    _check_zeta(zeta)
    return np.diag(np.asarray(zeta, dtype=complex) ** np.arange(-n + 1, n, 2))


def transition_N(zeta, S, g):
    """``(zeta~, S~, g~)`` for a point ``(S, g)`` of ``N_n``."""
    _check_zeta(zeta)
    S = np.asarray(S, dtype=complex)
    n = S.shape[0]
    D = d_matrix(n, zeta)
    Dinv = d_matrix(n, 1 / zeta)
    St = D @ S @ Dinv / zeta**2
    gt = np.asarray(g, dtype=complex) @ matrix_exp(-S / zeta) @ Dinv
    return 1 / zeta, St, gt


def inverse_transition_N(zeta_t, St, gt):
    """Chart map back from the ``zeta~`` chart.

    Solving the gluing law for ``(S, g)`` gives the same law for S but the
    opposite sign in the exponential: ``g = g~ exp(S~/zeta~) D(zeta~)^-1``.
    """
    _check_zeta(zeta_t)
    St = np.asarray(St, dtype=complex)
    n = St.shape[0]
    D = d_matrix(n, zeta_t)
    Dinv = d_matrix(n, 1 / zeta_t)
    S = D @ St @ Dinv / zeta_t**2
    g = np.asarray(gt, dtype=complex) @ matrix_exp(St / zeta_t) @ Dinv
    return 1 / zeta_t, S, g


def transition_SY(zeta, S, Y):
    _check_zeta(zeta)
    S = np.asarray(S, dtype=complex)
    n = S.shape[0]
    D = d_matrix(n, zeta)
    Dinv = d_matrix(n, 1 / zeta)
    E = matrix_exp(S / zeta)
    Einv = matrix_exp(-S / zeta)
    return D @ S @ Dinv / zeta**2, D @ E @ (np.asarray(Y) / zeta**2) @ Einv @ Dinv


def inverse_transition_SY(zeta_t, St, Yt):
    """Back from the ``zeta~`` chart: exponentials with the opposite sign."""
    _check_zeta(zeta_t)
    St = np.asarray(St, dtype=complex)
    n = St.shape[0]
    D = d_matrix(n, zeta_t)
    Dinv = d_matrix(n, 1 / zeta_t)
    E = matrix_exp(St / zeta_t)
    Einv = matrix_exp(-St / zeta_t)
    return D @ St @ Dinv / zeta_t**2, D @ Einv @ (np.asarray(Yt) / zeta_t**2) @ E @ Dinv


def _scaled_spec(spec, factor):
    return OrbitSpec(spec.mu * factor, spec.k, spec.l)


def transport_slice(zeta, pt):
    """Slice point in the other chart, orbit eigenvalues scaled by ``zeta^-2``."""
    St, Yt = transition_SY(zeta, pt.S, pt.Y)
    f = 1 / zeta**2
    return SlicePoint(St, Yt, _scaled_spec(pt.spec1, f), _scaled_spec(pt.spec2, f))


def canonical_transition(zeta, pt, tol=None):
    """:func:`transport_slice` followed by a diagonal rescaling of the border
    vectors, so that a canonical bordered point stays canonical.

    Kind-2 points must be in companion form, which the transition keeps.
    """
    if pt.kind == 2:
        if not is_companion(pt.S, tol):
            raise NotCanonical("kind-2 points must have S in companion form")
    else:
        check_canonical(pt, tol)
    tp = transport_slice(zeta, pt)
    n = pt.n
    core = n - {1: 1, 0: 2}.get(pt.kind, 0)
    scale = np.ones(n, dtype=complex)
    for r in range(core, n):
        s = tp.S[r, core - 1]
        if s == 0:
            raise NotCanonical("border entry vanished under the transition")
        scale[r] = 1 / s
    S = scale[:, None] * tp.S / scale[None, :]
    Y = scale[:, None] * tp.Y / scale[None, :]
    return SlicePoint(S, Y, tp.spec1, tp.spec2)


def cocycle_residual_N(zeta, S, g):
    """Distance of (inverse chart map) o (transition) from the identity."""
    zt, St, gt = transition_N(zeta, S, g)
    z2, S2, g2 = inverse_transition_N(zt, St, gt)
    return max(abs(z2 - zeta), sup(S2 - S), sup(g2 - g))


def cocycle_residual_SY(zeta, S, Y):
    St, Yt = transition_SY(zeta, S, Y)
    S2, Y2 = inverse_transition_SY(1 / zeta, St, Yt)
    return max(sup(S2 - S), sup(Y2 - Y))


def _hyp(zeta, lam):
    _check_zeta(zeta)
    if lam == 0:
        raise ChartBoundary("lambda = sqrt(x) must be non-zero")
    arg = 2 * lam / zeta
    return np.cosh(arg), np.sinh(arg)


def d2_chart_transition(zeta, lam, a, c):
    """``(lambda~, a~, c~)`` on ``D_{2,1}(mu/2, mu/2)``, ``lambda^2 = x``.

    Valid for ``mu1 = mu2`` only (tau = 0); otherwise use
    :func:`transport_slice` on the 2x2 pair.
    """
    ch, sh = _hyp(zeta, lam)
    at = (a * ch + c * lam * sh) / zeta**2
    ct = (a / lam) * sh + c * ch
    return lam / zeta**2, at, ct


def d1_chart_transition(zeta, lam, y, z):
    """``(y~, z~)`` on ``D_{1,1}(mu/2, mu/2)``; ``lambda~ = lambda/zeta^2``."""
    ch, sh = _hyp(zeta, lam)
    yt = zeta**2 * (y * ch - (z / lam) * sh)
    zt = z * ch - y * lam * sh
    return yt, zt


def d1_uv(lam, mu, y, z):
    """Entries of the diagonalised core for ``D_{1,1}(mu/2, mu/2)``."""
    return (mu - lam) * (z - lam * y), (lam + mu) * (z + lam * y)


def d1_yz_from_uv(lam, mu, u, v):
    y = v / (2 * lam * (lam + mu)) + u / (2 * lam * (lam - mu))
    z = v / (2 * (lam + mu)) - u / (2 * (lam - mu))
    return y, z


def d1_basis_matrix(lam, mu):
    """``V`` whose rows evaluate at ``lambda, -lambda, mu`` in the basis
    ``1, z, Q = z^2 - lambda^2`` of ``C[z]/((z^2 - lambda^2)(z - mu))``.

    These are the left eigenvectors of the companion matrix of S.
    """
    return np.array([[1, lam, 0], [1, -lam, 0], [1, mu, mu * mu - lam * lam]], dtype=complex)


def quadric_checks(kind, params, *coords, sqrt_x=None):
    """Residual of the product form of each surface equation.

    * kind 2: ``w^2 - x a^2 - (x - a-^2)(x - a+^2)/4`` with ``w = x c - tau/2``
    * kind 1: ``q^2 - x z^2 - (a-^2 - x)/4`` with ``q = y x + a-/2``
    * kind 0: ``(xw - 1/2 + t s)(xw - 1/2 - t s) - 1/4`` with ``s^2 = x``

    Coordinates as in :data:`hkslice.surfaces.COORDINATES`. Each residual
    equals the surface equation multiplied by ``-x``, ``x`` or ``-x``.
    """
    ap, am = params.alpha_plus, params.alpha_minus
    if kind == 2:
        a, c, x = coords
        w = x * c - params.tau / 2
        return w * w - x * a * a - (x - am * am) * (x - ap * ap) / 4
    if kind == 1:
        x, y, z = coords
        q = y * x + am / 2
        return q * q - x * z * z - (am * am - x) / 4
    if kind == 0:
        t, w, x = coords
        s = np.sqrt(complex(x)) if sqrt_x is None else sqrt_x
        return (x * w - 0.5 + t * s) * (x * w - 0.5 - t * s) - 0.25
    raise ValueError(f"kind must be 0, 1 or 2, got {kind}")
