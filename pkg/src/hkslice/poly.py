"""Dense univariate polynomials over the complex numbers.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies
``z**i``. The zero polynomial has an empty coefficient array and degree -1.

Besides ring arithmetic the module provides reduction modulo a monic
polynomial, Lagrange interpolation, simultaneous (Aberth-Ehrlich) root
finding, elementary symmetric functions, and the closed-form inverse of a
Vandermonde matrix.
"""

import numpy as np

from .config import TOLERANCES, get_separation, get_tol
from .errors import InvalidModulus, NodesTooClose, RootFindingFailed

__all__ = [
    "Polynomial",
    "poly_divmod",
    "poly_mod",
    "lagrange_interpolate",
    "roots",
    "cluster_roots",
    "elementary_symmetric",
    "vandermonde",
    "vandermonde_inverse",
    "check_separation",
]


class Polynomial:
    """Immutable polynomial with complex coefficients in ascending order."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("polynomial coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.setflags(write=False)
        self._c = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def monomial(cls, k, coeff=1.0):
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @classmethod
    def z(cls):
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, rts):
        """Monic polynomial ``prod (z - r)`` over the given roots."""
        c = np.ones(1, dtype=complex)
        for r in np.atleast_1d(np.asarray(rts, dtype=complex)):
            nxt = np.zeros(c.size + 1, dtype=complex)
            nxt[1:] += c
            nxt[:-1] -= r * c
            c = nxt
        return cls(c)

    # -- basic properties -------------------------------------------------
    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return self._c.size - 1

    @property
    def leading(self):
        return self._c[-1] if self._c.size else 0j

    def is_zero(self):
        return self._c.size == 0

    def is_monic(self, tol=None):
        return self._c.size > 0 and abs(self._c[-1] - 1.0) <= get_tol(tol)

    def norm(self):
        """Largest coefficient modulus."""
        return float(np.abs(self._c).max()) if self._c.size else 0.0

    def padded(self, length):
        """Coefficient vector zero-padded (never truncated) to ``length``."""
        if length < self._c.size:
            raise ValueError(f"degree {self.degree} does not fit in {length} slots")
        out = np.zeros(length, dtype=complex)
        out[: self._c.size] = self._c
        return out

    def trim(self, tol=None):
        """Drop leading coefficients whose modulus is at most ``tol``."""
        tol = get_tol(tol)
        c = self._c
        k = c.size
        while k > 0 and abs(c[k - 1]) <= tol:
            k -= 1
        return Polynomial(c[:k])

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.zeros_like(x)
        for a in self._c[::-1]:
            out = out * x + a
        return out if out.ndim else complex(out)

    def abs_scale(self, x):
        """``sum |c_i| |x|^i``, the natural scale for the residual ``|p(x)|``."""
        return Polynomial(np.abs(self._c))(np.abs(x)).real

    def derivative(self):
        if self._c.size <= 1:
            return Polynomial()
        return Polynomial(self._c[1:] * np.arange(1, self._c.size))

    def compose_square(self):
        """``p(z**2)``."""
        c = np.zeros(max(2 * self._c.size - 1, 0), dtype=complex)
        c[::2] = self._c
        return Polynomial(c)

    def even_odd(self):
        """Return ``(e, o)`` with ``p(z) = e(z**2) + z*o(z**2)``."""
        return Polynomial(self._c[::2]), Polynomial(self._c[1::2])

    def reflect(self):
        """``p(-z)``."""
        c = self._c.copy()
        c[1::2] *= -1
        return Polynomial(c)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if np.isscalar(other) or np.ndim(other) == 0:
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(self._c.size, other._c.size)
        return Polynomial(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        return Polynomial(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            return NotImplemented
        return Polynomial(self._c / scalar)

    def __pow__(self, k):
        if int(k) != k or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Polynomial([1.0])
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def allclose(self, other, tol=None):
        other = self._coerce(other)
        n = max(self._c.size, other._c.size)
        return bool(np.abs(self.padded(n) - other.padded(n)).max(initial=0.0) <= get_tol(tol))

    def __repr__(self):
        return f"Polynomial({np.array2string(self._c, precision=6, separator=', ')})"


def _check_modulus(q, tol):
    if not isinstance(q, Polynomial):
        q = Polynomial(q)
    if q.degree < 1:
        raise InvalidModulus("modulus must have degree >= 1")
    if not q.is_monic(tol):
        raise InvalidModulus(f"modulus is not monic (leading coefficient {q.leading})")
    return q


def poly_divmod(p, q, tol=None):
    """Long division by a monic ``q``; returns ``(quotient, remainder)``."""
    q = _check_modulus(q, tol)
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    n = q.degree
    r = p.coeffs.copy()
    if r.size <= n:
        return Polynomial(), Polynomial(r)
    qc = q.coeffs[:-1]
    quot = np.zeros(r.size - n, dtype=complex)
    for k in range(r.size - 1, n - 1, -1):
        lead = r[k]
        quot[k - n] = lead
        r[k - n : k] -= lead * qc
        r[k] = 0.0
    return Polynomial(quot), Polynomial(r[:n])


def poly_mod(p, q, tol=None):
    """Remainder of ``p`` modulo the monic polynomial ``q``."""
    return poly_divmod(p, q, tol)[1]


def check_separation(xs, sep=None):
    """Raise :class:`NodesTooClose` unless all pairwise gaps are at least ``sep``."""
    xs = np.asarray(xs, dtype=complex).ravel()
    sep = get_separation(sep)
    if xs.size > 1:
        d = np.abs(xs[:, None] - xs[None, :])
        d[np.diag_indices(xs.size)] = np.inf
        if d.min() < sep:
            i, j = np.unravel_index(np.argmin(d), d.shape)
            raise NodesTooClose(f"nodes {xs[i]} and {xs[j]} closer than {sep}")
    return xs


def lagrange_interpolate(xs, values, sep=None):
    """Polynomial of degree < m through ``(xs[i], values[i])``.

    Built from the Lagrange basis products directly, so it does not share
    code with :func:`vandermonde_inverse`.
    """
    xs = check_separation(xs, sep)
    vs = np.asarray(values, dtype=complex).ravel()
    if vs.size != xs.size:
        raise ValueError("need one value per node")
    out = np.zeros(xs.size, dtype=complex)
    for i in range(xs.size):
        others = np.delete(xs, i)
        basis = Polynomial.from_roots(others)
        denom = np.prod(xs[i] - others)
        out[: basis.coeffs.size] += vs[i] / denom * basis.coeffs
    return Polynomial(out)


def _aberth(c, max_iter, rng_seed):
    """Aberth-Ehrlich iteration on the monic coefficient vector ``c``."""
    n = c.size - 1
    p = Polynomial(c)
    dp = p.derivative()
    # Initial guesses on a circle of radius given by the Fujiwara bound.
    ratios = np.abs(c[:-1][::-1]) ** (1.0 / np.arange(1, n + 1))
    ratios[-1] = (np.abs(c[0]) / 2.0) ** (1.0 / n)
    radius = 2.0 * ratios.max()
    if radius == 0.0:
        return np.zeros(n, dtype=complex), True
    phase = np.random.default_rng(rng_seed).uniform(0, 2 * np.pi)
    zs = radius * np.exp(1j * (phase + 2 * np.pi * np.arange(n) / n + 0.4 / n))
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        pv = p(zs)
        dv = dp(zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = pv / dv
            diff = zs[:, None] - zs[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            w = newton / (1.0 - newton * s)
        done = (pv == 0) | (np.abs(pv) <= 4 * eps * p.abs_scale(zs))
        w = np.where(done | ~np.isfinite(w), 0.0, w)
        zs = zs - w
        # relative step test, so tiny roots are not accepted prematurely
        if np.all(done | (np.abs(w) <= 4 * eps * np.abs(zs))):
            return zs, True
    return zs, False


def roots(p, tol=None, max_iter=500):
    """All roots of ``p`` with multiplicity.

    Roots are found simultaneously by Aberth-Ehrlich iteration. Roots that
    fall into one cluster (radius ``cluster * (1 + max|root|)``) are
    replaced by the cluster mean so multiplicities show up as exact
    repeats. Raises :class:`RootFindingFailed` when the backward residual
    ``|p(r)| <= tol * sum|c_i||r|^i`` cannot be reached.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise ValueError("roots need degree >= 1")
    tol = get_tol(tol)
    c = p.coeffs / p.leading
    # Exact zero roots are split off first.
    nzero = int(np.flatnonzero(c)[0])
    c = c[nzero:]
    zs = np.zeros(0, dtype=complex)
    if c.size == 2:
        zs = np.array([-c[0]], dtype=complex)
    elif c.size > 2:
        zs, _ = _aberth(c, max_iter, rng_seed=c.size)
        q = Polynomial(c)
        bad = np.abs(q(zs)) > tol * q.abs_scale(zs)
        if np.any(bad):
            raise RootFindingFailed(f"no convergence for {int(bad.sum())} roots of {p!r}")
    zs = np.concatenate([np.zeros(nzero, dtype=complex), zs])
    out = np.empty_like(zs)
    for centre, members in _clusters(zs):
        out[members] = centre
    order = np.lexsort((out.imag.round(12), out.real.round(12)))
    return out[order]


def _clusters(zs, radius=None):
    if radius is None:
        radius = TOLERANCES.cluster * (1.0 + (np.abs(zs).max() if zs.size else 0.0))
    unassigned = list(range(zs.size))
    groups = []
    while unassigned:
        i = unassigned.pop(0)
        members = [i]
        grew = True
        while grew:
            grew = False
            for j in list(unassigned):
                if np.min(np.abs(zs[j] - zs[members])) <= radius:
                    members.append(j)
                    unassigned.remove(j)
                    grew = True
        groups.append((zs[members].mean(), np.array(members)))
    return groups


def cluster_roots(zs, radius=None):
    """Group roots into ``[(centre, multiplicity), ...]``."""
    zs = np.asarray(zs, dtype=complex).ravel()
    return [(complex(c), int(m.size)) for c, m in _clusters(zs, radius)]


def elementary_symmetric(values, l):
    """``e_l(values)``; ``e_0 = 1``."""
    vs = np.asarray(values, dtype=complex).ravel()
    if not 0 <= l <= vs.size:
        raise IndexError(f"e_{l} undefined for {vs.size} values")
    # Coefficients of prod (1 + v t), built incrementally.
    e = np.zeros(vs.size + 1, dtype=complex)
    e[0] = 1.0
    for k, v in enumerate(vs, start=1):
        e[1 : k + 1] = e[1 : k + 1] + v * e[0:k]
    return complex(e[l])


def vandermonde(xs):
    """``V[i, j] = xs[i] ** j``."""
    xs = np.asarray(xs, dtype=complex).ravel()
    return xs[:, None] ** np.arange(xs.size)[None, :]


def vandermonde_inverse(xs, sep=None):
    """Closed-form inverse of :func:`vandermonde`.

    Entry ``(i, j)`` (1-based) is
    ``(-1)**(m-i) e_{m-i}(x without x_j) / prod_{k != j} (x_j - x_k)``.
    """
    xs = check_separation(xs, sep)
    m = xs.size
    out = np.empty((m, m), dtype=complex)
    for j in range(m):
        others = np.delete(xs, j)
        denom = np.prod(xs[j] - others)
        for i in range(m):
            l = m - 1 - i
            out[i, j] = (-1) ** l * elementary_symmetric(others, l) / denom
    return out
