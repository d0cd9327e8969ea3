import numpy as np
import numpy.polynomial.polynomial as npp
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from hkslice.errors import InvalidModulus, NodesTooClose, RootFindingFailed
from hkslice.poly import (Polynomial, check_separation, cluster_roots, elementary_symmetric,
                          lagrange_interpolate, poly_divmod, poly_mod, roots, vandermonde,
                          vandermonde_inverse)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
coeff_lists = st.lists(cplx, min_size=1, max_size=8)


def monic_from(cs):
    return Polynomial(list(cs) + [1.0])


class TestPolynomialBasics:
    def test_zero_polynomial(self):
        p = Polynomial()
        assert p.is_zero() and p.degree == -1 and p.norm() == 0.0

    def test_trailing_zeros_are_stripped(self):
        p = Polynomial([1, 2, 0, 0])
        assert p.degree == 1
        np.testing.assert_array_equal(p.coeffs, [1, 2])

    def test_coefficients_are_read_only(self):
        p = Polynomial([1, 2])
        with pytest.raises(ValueError):
            p.coeffs[0] = 5

    def test_constructors(self):
        assert Polynomial.monomial(3, 2.0).coeffs.tolist() == [0, 0, 0, 2]
        assert Polynomial.z()(2.5) == 2.5
        assert Polynomial.constant(4).degree == 0
        r = Polynomial.from_roots([1, -1])
        np.testing.assert_allclose(r.coeffs, [-1, 0, 1])

    def test_evaluation_vectorised(self):
        p = Polynomial([1, 0, 1])
        np.testing.assert_allclose(p(np.array([0, 1j, 2])), [1, 0, 5])

    def test_compose_square_even_odd_reflect(self):
        p = Polynomial([1, 2, 3, 4])
        e, o = p.even_odd()
        z = 0.3 + 0.7j
        assert np.isclose(e(z * z) + z * o(z * z), p(z))
        assert np.isclose(p.reflect()(z), p(-z))
        assert np.isclose(p.compose_square()(z), p(z * z))

    def test_non_integer_power_rejected(self):
        with pytest.raises(ValueError):
            Polynomial([1, 1]) ** 1.5

    def test_padded_never_truncates(self):
        with pytest.raises(ValueError):
            Polynomial([1, 2, 3]).padded(2)

    @given(coeff_lists, coeff_lists)
    def test_product_matches_numpy(self, a, b):
        ours = (Polynomial(a) * Polynomial(b)).padded(len(a) + len(b) - 1)
        ref = npp.polymul(np.array(a), np.array(b))
        np.testing.assert_allclose(ours[: ref.size], ref, atol=1e-12)

    @given(coeff_lists, coeff_lists)
    def test_ring_axioms_under_evaluation(self, a, b):
        p, q = Polynomial(a), Polynomial(b)
        z = 0.4 - 0.3j
        assert np.isclose((p + q)(z), p(z) + q(z))
        assert np.isclose((p - q)(z), p(z) - q(z))
        assert np.isclose((p * q)(z), p(z) * q(z))
        assert np.isclose((2 - p)(z), 2 - p(z))


class TestDivision:
    def test_non_monic_modulus(self):
        with pytest.raises(InvalidModulus):
            poly_divmod(Polynomial([1, 1, 1]), Polynomial([1, 2]))

    def test_constant_modulus(self):
        with pytest.raises(InvalidModulus):
            poly_mod(Polynomial([1, 1]), Polynomial([1]))

    def test_small_dividend(self):
        quot, rem = poly_divmod(Polynomial([1, 2]), Polynomial([0, 0, 1]))
        assert quot.is_zero() and rem.allclose(Polynomial([1, 2]))

    @given(coeff_lists, st.lists(cplx, min_size=1, max_size=5))
    def test_divmod_identity_and_numpy(self, a, b):
        p, q = Polynomial(a), monic_from(b)
        quot, rem = poly_divmod(p, q)
        assert rem.degree < q.degree
        assert (quot * q + rem - p).norm() <= 1e-9 * (1 + p.norm()) * (1 + q.norm()) ** len(a)
        ref_q, ref_r = npp.polydiv(np.array(a, dtype=complex), q.coeffs)
        np.testing.assert_allclose(rem.padded(q.degree), np.pad(ref_r, (0, q.degree - ref_r.size))[: q.degree],
                                   atol=1e-8 * (1 + q.norm()) ** len(a))


class TestRoots:
    def test_simple(self):
        np.testing.assert_allclose(roots(Polynomial([-2, 0, 1])), [-np.sqrt(2), np.sqrt(2)])

    def test_zero_roots_exact(self):
        r = roots(Polynomial([0, 0, -1, 1]))
        assert np.sum(r == 0) == 2
        assert np.isclose(r[r != 0][0], 1)

    def test_multiple_root_clustered(self):
        r = roots(Polynomial.from_roots([0.5, 0.5, 0.5, -1]))
        groups = sorted(cluster_roots(r, radius=1e-3), key=lambda cm: cm[1])
        assert [m for _, m in groups] == [1, 3]
        assert np.isclose(groups[0][0], -1) and np.isclose(groups[1][0], 0.5, atol=1e-4)

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            roots(Polynomial([3]))

    def test_failure_surfaces(self):
        with pytest.raises(RootFindingFailed):
            roots(Polynomial.from_roots([1, 2, 3, 4, 5]), max_iter=1)

    def test_deterministic(self):
        p = Polynomial([1 + 1j, -2, 0.3, 1])
        np.testing.assert_array_equal(roots(p), roots(p))

    @given(st.lists(cplx, min_size=1, max_size=8))
    def test_matches_numpy_roots(self, cs):
        p = monic_from(cs)
        ours = roots(p)
        ref = np.roots(p.coeffs[::-1])
        # backward error for simple roots; clustered ones are replaced by
        # their mean and only compared against the reference
        for r, mult in cluster_roots(ours):
            if mult == 1:
                assert abs(p(r)) <= 1e-7 * p.abs_scale(r)
        cost = np.abs(ours[:, None] - ref[None, :])
        i, j = linear_sum_assignment(cost)
        spread = np.abs(ref).max() + 1
        assert cost[i, j].max() <= 1e-4 * spread


class TestInterpolation:
    def test_separation_error(self):
        with pytest.raises(NodesTooClose):
            check_separation([0, 1e-9])
        with pytest.raises(NodesTooClose):
            lagrange_interpolate([1, 1], [0, 1])

    def test_value_count(self):
        with pytest.raises(ValueError):
            lagrange_interpolate([1, 2], [1])

    def test_known_quadratic(self):
        p = lagrange_interpolate([0, 1, 2], [1, 2, 5])
        np.testing.assert_allclose(p.padded(3), [1, 0, 1], atol=1e-14)

    @given(st.integers(1, 8), st.integers(0, 2**31 - 1))
    def test_against_vandermonde_solve(self, m, seed):
        rng = np.random.default_rng(seed)
        xs = np.exp(2j * np.pi * (np.arange(m) + 0.3 * rng.uniform(size=m)) / m)
        vals = rng.normal(size=m) + 1j * rng.normal(size=m)
        ours = lagrange_interpolate(xs, vals).padded(m)
        ref = np.linalg.solve(np.vander(xs, increasing=True), vals)
        np.testing.assert_allclose(ours, ref, atol=1e-9)


class TestSymmetricAndVandermonde:
    def test_e0_and_bounds(self):
        assert elementary_symmetric([1, 2], 0) == 1
        with pytest.raises(IndexError):
            elementary_symmetric([1, 2], 3)

    @given(st.lists(cplx, min_size=1, max_size=7))
    def test_against_np_poly(self, vs):
        ref = np.poly(np.array(vs, dtype=complex))
        for l in range(len(vs) + 1):
            assert np.isclose(elementary_symmetric(vs, l), (-1) ** l * ref[l], atol=1e-9 * 4 ** len(vs))

    def test_vandermonde_shape(self):
        V = vandermonde([2, 3])
        np.testing.assert_array_equal(V, [[1, 2], [1, 3]])

    @given(st.integers(1, 8), st.integers(0, 2**31 - 1))
    def test_inverse_against_numpy(self, m, seed):
        rng = np.random.default_rng(seed)
        xs = np.exp(2j * np.pi * np.arange(m) / m) * (1 + 0.2 * rng.uniform(size=m))
        Vi = vandermonde_inverse(xs)
        np.testing.assert_allclose(Vi, np.linalg.inv(vandermonde(xs)), atol=1e-9)
        np.testing.assert_allclose(vandermonde(xs) @ Vi, np.eye(m), atol=1e-9)

    def test_inverse_needs_separation(self):
        with pytest.raises(NodesTooClose):
            vandermonde_inverse([1.0, 1.0])
