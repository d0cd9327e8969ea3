import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkslice import nahm
from hkslice.errors import StiffnessFailure
from hkslice.linalg import sup

ZETAS = np.array([0.3, -0.7 + 0.2j, 1j, 1.1 - 0.4j, -0.2 - 0.9j])


def comm(A, B):
    return A @ B - B @ A


class TestRegularTriple:
    def test_n1_zero(self):
        assert all(sup(a) == 0 for a in nahm.regular_triple(1).alphas)

    def test_n2_pauli(self):
        sx = np.array([[0, 1], [1, 0]])
        sy = np.array([[0, -1j], [1j, 0]])
        sz = np.diag([1, -1])
        a1, a2, a3 = nahm.regular_triple(2).alphas
        for a, s in ((a1, sx), (a2, sy), (a3, sz)):
            np.testing.assert_allclose(a, 1j * s / 2, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_brackets_casimir_skew(self, n):
        p = nahm.regular_triple(n)
        a1, a2, a3 = p.alphas
        for x, y, z in ((a1, a2, a3), (a2, a3, a1), (a3, a1, a2)):
            assert sup(comm(x, y) + z) <= 1e-12
        assert sup(p.casimir() + (n * n - 1) / 4 * np.eye(n)) <= 1e-12
        assert all(sup(a + a.conj().T) <= 1e-15 for a in p.alphas)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_irreducible(self, n):
        # only scalars commute with all three residues
        a1, a2, a3 = nahm.regular_triple(n).alphas
        eye = np.eye(n)
        K = np.vstack([np.kron(eye, a) - np.kron(a.T, eye) for a in (a1, a2, a3)])
        assert n * n - np.linalg.matrix_rank(K) == 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            nahm.regular_triple(0)


class TestRhs:
    def test_diagonal_fixed_point(self):
        D = [np.diag(np.arange(3) * 1j * k) for k in range(4)]
        st_ = nahm.NahmState(0.5, *D)
        assert all(sup(d) == 0 for d in nahm.nahm_rhs(st_))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pole_solution_is_exact(self, n):
        p = nahm.regular_triple(n)
        for t in (0.01, 0.3, 1.0):
            _, d1, d2, d3 = nahm.nahm_rhs(nahm.pole_state(p, t))
            for d, a in zip((d1, d2, d3), p.alphas):
                assert sup(d + a / t**2) <= 1e-10 / t**2

    def test_gauge_shift(self, rng):
        T = [nahm.random_skew(3, rng) for _ in range(4)]
        with_T0 = nahm.nahm_rhs(nahm.NahmState(0.2, *T))
        without = nahm.nahm_rhs(nahm.NahmState(0.2, np.zeros((3, 3)), *T[1:]))
        for i in (1, 2, 3):
            np.testing.assert_allclose(with_T0[i] - without[i], -comm(T[0], T[i]), atol=1e-14)


class TestLax:
    @given(st.integers(1, 4), st.integers(0, 2**31 - 1))
    def test_lax_equation(self, n, seed):
        # dA/dt along the flow equals [A, B]
        rng = np.random.default_rng(seed)
        T = [nahm.random_skew(n, rng) for _ in range(4)]
        state = nahm.NahmState(0.5, *T)
        _, d1, d2, d3 = nahm.nahm_rhs(state)
        zeta = complex(rng.normal(), rng.normal())
        dstate = nahm.NahmState(0.5, np.zeros((n, n)), d1, d2, d3)
        dA = nahm.lax_matrix(dstate, zeta)
        A, B = nahm.lax_matrix(state, zeta), nahm.lax_partner(state, zeta)
        assert sup(dA - comm(A, B)) <= 1e-10 * (1 + sup(A) * sup(B))


class TestIntegration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_pole_tracking(self, n):
        p = nahm.regular_triple(n)
        t0 = time.perf_counter()
        traj = nahm.integrate(nahm.pole_state(p, 0.01), 1.0)
        assert time.perf_counter() - t0 < 10
        assert nahm.pole_error(traj, p) <= 1e-6
        assert nahm.spectral_drift(traj, ZETAS, pole_scaled=True) <= 1e-6
        assert traj.times[0] == 0.01 and np.isclose(traj.times[-1], 1.0)

    def test_n1_constant(self, rng):
        s = nahm.NahmState(0.1, *(np.array([[1j * rng.normal()]]) for _ in range(4)))
        traj = nahm.integrate(s, 1.0, samples=5)
        for st_ in traj.states:
            for T, T0 in zip(st_.triple, s.triple):
                np.testing.assert_allclose(T, T0)

    def test_commuting_constant(self):
        D = [np.diag([1j, -2j, 0.5j]) * k for k in (0, 1, 2, 3)]
        traj = nahm.integrate(nahm.NahmState(0.1, *D), 1.0, samples=4)
        assert all(sup(a - b) <= 1e-14 for s in traj.states for a, b in zip(s.triple, D[1:]))
        assert nahm.spectral_drift(traj, ZETAS) == 0

    @settings(max_examples=10)
    @given(st.integers(2, 4), st.booleans(), st.integers(0, 2**31 - 1))
    def test_bounded_isospectral_and_skew(self, n, gauge, seed):
        rng = np.random.default_rng(seed)
        start = nahm.bounded_state(n, rng, t=0.1, gauge=gauge)
        traj = nahm.integrate(start, 1.0)
        assert nahm.spectral_drift(traj, ZETAS) <= 1e-6
        assert max(nahm.skew_defect(s) for s in traj.states) / 0.9 <= 1e-7

    def test_blow_up_is_reported(self):
        # the translated pole solution alpha_i / (t - 1) blows up at t = 1
        p = nahm.regular_triple(2)
        start = nahm.NahmState(0.5, np.zeros((2, 2)), *(a / (0.5 - 1.0) for a in p.alphas))
        with pytest.raises(StiffnessFailure):
            nahm.integrate(start, 1.5)

    def test_custom_sample_times(self):
        p = nahm.regular_triple(2)
        traj = nahm.integrate(nahm.pole_state(p, 0.5), 1.0, t_eval=[0.5, 0.75, 1.0])
        assert len(traj) == 3 and traj.nfev > 0
        np.testing.assert_allclose(traj.final.T3, p.alpha3, atol=1e-10)
