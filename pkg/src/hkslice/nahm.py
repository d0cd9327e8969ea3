"""Nahm's equations with a simple pole at t = 0.

    dT_i/dt + [T_0, T_i] = [T_j, T_k],   (i, j, k) cyclic,

for n x n matrices on (0, 1]. The residues at the pole form the regular
su(2) triple. We take ``alpha_k = i J_k`` with ``J_k`` the Hermitian spin
``(n-1)/2`` generators, so ``[alpha_j, alpha_k] = -alpha_i`` and
``T_i = alpha_i / t`` solves the equations exactly.

Isospectrality of ``A(zeta) = (T1 + i T2) - 2 i T3 zeta + (T1 - i T2) zeta^2``
(a Lax equation ``dA/dt = [A, B]`` with ``B = T0 - i T3 + (T1 - i T2) zeta``)
serves as an integration check.
"""

from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StiffnessFailure
from .linalg import char_poly, sup

__all__ = [
    "PoleData",
    "NahmState",
    "Trajectory",
    "regular_triple",
    "pole_state",
    "nahm_rhs",
    "integrate",
    "lax_matrix",
    "lax_partner",
    "spectral_drift",
    "pole_error",
    "skew_defect",
    "random_skew",
    "bounded_state",
]


@dataclass(frozen=True)
class PoleData:
    n: int
    alpha1: np.ndarray
    alpha2: np.ndarray
    alpha3: np.ndarray

    @property
    def alphas(self):
        return (self.alpha1, self.alpha2, self.alpha3)

    def casimir(self):
        return sum(a @ a for a in self.alphas)


@dataclass(frozen=True)
class NahmState:
    t: float
    T0: np.ndarray
    T1: np.ndarray
    T2: np.ndarray
    T3: np.ndarray

    @property
    def n(self):
        return self.T1.shape[0]

    @property
    def triple(self):
        return (self.T1, self.T2, self.T3)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple
    nfev: int = 0

    def __len__(self):
        return len(self.states)

    @property
    def final(self):
        return self.states[-1]


def regular_triple(n):
    """Residues ``alpha_k = i J_k`` of the irreducible n-dimensional rep."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = (n - 1) / 2
    m = j - np.arange(n)
    Jz = np.diag(m).astype(complex)
    Jp = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        # J+ raises m[k] to m[k-1]
        Jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    Jm = Jp.conj().T
    Jx = (Jp + Jm) / 2
    Jy = (Jp - Jm) / 2j
    return PoleData(n, 1j * Jx, 1j * Jy, 1j * Jz)


def pole_state(poles, t, T0=None):
    """The exact pole solution ``T_i = alpha_i / t`` at time t."""
    n = poles.n
    T0 = np.zeros((n, n), dtype=complex) if T0 is None else np.asarray(T0, dtype=complex)
    return NahmState(float(t), T0, *(a / t for a in poles.alphas))


def _comm(A, B):
    return A @ B - B @ A


def nahm_rhs(state):
    """``(0, dT1, dT2, dT3)``; T0 is held fixed (gauge choice)."""
    T0, T1, T2, T3 = state.T0, state.T1, state.T2, state.T3
    d1 = _comm(T2, T3) - _comm(T0, T1)
    d2 = _comm(T3, T1) - _comm(T0, T2)
    d3 = _comm(T1, T2) - _comm(T0, T3)
    return np.zeros_like(T0), d1, d2, d3


def integrate(start, t_end=1.0, t_eval=None, rtol=1e-12, atol=1e-14, samples=50):
    """Adaptive DOP853 integration from ``start.t`` to ``t_end``.

    The step size is controlled by ``rtol``/``atol``, so it shrinks like t
    near a pole. ``t_eval`` defaults to ``samples`` equally spaced times.
    """
    n = start.n
    T0 = np.asarray(start.T0, dtype=complex)
    t0 = float(start.t)
    if t_eval is None:
        t_eval = np.linspace(t0, t_end, samples)

    def rhs(t, y):
        T = y.reshape(3, n, n)
        st = NahmState(t, T0, T[0], T[1], T[2])
        return np.concatenate([d.ravel() for d in nahm_rhs(st)[1:]])

    y0 = np.concatenate([np.asarray(T, dtype=complex).ravel() for T in start.triple])
    sol = solve_ivp(rhs, (t0, t_end), y0, method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol)
    if not sol.success:
        raise StiffnessFailure(f"Nahm integration failed: {sol.message}")
    states = tuple(
        NahmState(float(t), T0, *sol.y[:, k].reshape(3, n, n)) for k, t in enumerate(sol.t)
    )
    return Trajectory(np.asarray(sol.t), states, int(sol.nfev))


def lax_matrix(state, zeta):
    T1, T2, T3 = state.triple
    return (T1 + 1j * T2) - 2j * T3 * zeta + (T1 - 1j * T2) * zeta**2


def lax_partner(state, zeta):
    """``B(zeta)`` with ``dA/dt = [A, B]`` along the flow."""
    T1, T2, T3 = state.triple
    return state.T0 - 1j * T3 + (T1 - 1j * T2) * zeta


def spectral_drift(traj, zetas, pole_scaled=False):
    """Largest coefficientwise change of ``char_poly(A(zeta))``.

    The change in the coefficient of ``z^k`` is measured against
    ``max(1, C(n, k) |A|^(n-k))``, the size bound for that coefficient at
    the initial state. With ``pole_scaled`` the coefficient of ``z^k`` is
    first multiplied by ``t^(n-k)`` (and A by t), removing the ``1/t``
    growth of a pole solution.
    """
    n = traj.states[0].n
    k = np.arange(n + 1)
    binom = np.array([comb(n, j) for j in k], dtype=float)
    worst = 0.0
    for zeta in np.atleast_1d(zetas):
        ref = None
        for st in traj.states:
            c = char_poly(lax_matrix(st, zeta)).padded(n + 1)
            if pole_scaled:
                c = c * st.t ** (n - k)
            if ref is None:
                ref = c
                A0 = lax_matrix(st, zeta) * (st.t if pole_scaled else 1.0)
                scale = np.maximum(1.0, binom * np.linalg.norm(A0, 2) ** (n - k))
                continue
            worst = max(worst, float((np.abs(c - ref) / scale).max()))
    return worst


def pole_error(traj, poles):
    """Largest relative deviation from ``alpha_i / t`` over the trajectory."""
    worst = 0.0
    for st in traj.states:
        for T, a in zip(st.triple, poles.alphas):
            exact = a / st.t
            worst = max(worst, sup(T - exact) / max(sup(exact), 1e-300))
    return worst


def skew_defect(state):
    return max(sup(T + T.conj().T) for T in (state.T0,) + state.triple)


def random_skew(n, rng, scale=1.0):
    """Random skew-Hermitian matrix with entries of size ~ ``scale``."""
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (M - M.conj().T) / 2


def bounded_state(n, rng, t=0.1, scale=0.2, gauge=False):
    """Random skew-Hermitian data small enough to stay pole-free on [t, 1].

    Generic Nahm data reaches a pole in time of order ``1/|T|``; entries of
    size 0.2 keep the solution bounded on the unit interval.
    """
    T0 = random_skew(n, rng, scale) if gauge else np.zeros((n, n), dtype=complex)
    return NahmState(float(t), T0, *(random_skew(n, rng, scale) for _ in range(3)))
