"""Regular slices to sums of two adjoint orbits with two eigenvalues each.

An orbit ``O(mu, k, l)`` consists of the n x n matrices A with
``A^2 = mu^2`` and ``tr A = (k - l) mu``. A point of the slice is a pair
``(A, B)`` from two such orbits with ``S = A + B`` regular; it is stored
as ``(S, Y)`` with ``Y = (A - B)/2``, so that

    S Y + Y S = mu1^2 - mu2^2,    (Y - S/2)^2 = mu2^2,
    tr S = d1 mu1 + d2 mu2,       tr Y = (d1 mu1 - d2 mu2)/2.

The nonempty cases are ``(d1, d2) = (0, 0), (1, 1), (2, 0)``, giving the
families ``D_{2,m}``, ``D_{1,m}`` and ``D_{0,m}``. For the last two the
pair can be brought to a block lower-triangular canonical form whose
upper-left block is a ``D_{2,m}`` point; the maps ``phi``, ``phi1``,
``phi2`` extract that block or the two bordered minors.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import get_tol
from .errors import (DegenerateParameter, NotCanonical, NotOnSlice,
                     ShapeViolation)
from .linalg import char_poly, companion, is_companion, rank, sup
from .poly import Polynomial, poly_divmod, roots

__all__ = [
    "OrbitSpec",
    "SlicePoint",
    "CharShape",
    "family_specs",
    "orbit_sample",
    "slice_residual",
    "slice_to_pair",
    "pair_to_slice",
    "char_shape",
    "is_empty",
    "rank_obstruction",
    "emptiness_certificate",
    "canonical_basis",
    "to_canonical",
    "to_companion",
    "check_canonical",
    "extract_phi",
    "extract_phi1",
    "extract_phi2",
    "extend_phi_inverse",
    "assemble_d0",
]


@dataclass(frozen=True)
class OrbitSpec:
    """Semisimple orbit with eigenvalue ``mu`` (multiplicity k) and ``-mu``
    (multiplicity l).

    The representation is normalised so that ``k >= l``; ``(mu, k, l)``
    with ``k < l`` is the same orbit as ``(-mu, l, k)``.
    """

    mu: complex
    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or self.k + self.l < 1:
            raise ValueError("multiplicities must be non-negative with k + l >= 1")
        object.__setattr__(self, "mu", complex(self.mu))
        if self.k < self.l:
            k, l = self.l, self.k
            object.__setattr__(self, "k", k)
            object.__setattr__(self, "l", l)
            object.__setattr__(self, "mu", -self.mu)

    @property
    def n(self):
        return self.k + self.l

    @property
    def d(self):
        return self.k - self.l

    @property
    def nilpotent(self):
        return self.mu == 0


def family_specs(kind, m, mu1, mu2):
    """Orbit pair defining ``D_{kind,m}(mu1, mu2)``."""
    mu1, mu2 = complex(mu1), complex(mu2)
    if kind == 2:
        return OrbitSpec(mu1, m, m), OrbitSpec(mu2, m, m)
    if kind == 1:
        return OrbitSpec(mu1, m + 1, m), OrbitSpec(mu2, m + 1, m)
    if kind == 0:
        return OrbitSpec(mu1, m + 2, m), OrbitSpec(mu2, m + 1, m + 1)
    raise ValueError(f"kind must be 0, 1 or 2, got {kind}")


def _kind_of(spec1, spec2):
    dd = tuple(sorted((abs(spec1.d), abs(spec2.d)), reverse=True))
    return {(0, 0): 2, (1, 1): 1, (2, 0): 0}.get(dd)


@dataclass(frozen=True)
class SlicePoint:
    """A pair ``(S, Y)`` together with the two orbits it refers to."""

    S: np.ndarray
    Y: np.ndarray
    spec1: OrbitSpec
    spec2: OrbitSpec

    def __post_init__(self):
        S = np.array(self.S, dtype=complex)
        Y = np.array(self.Y, dtype=complex)
        n = self.spec1.n
        if S.shape != (n, n) or Y.shape != (n, n) or self.spec2.n != n:
            raise ValueError("matrix sizes do not match the orbit dimensions")
        if not (np.all(np.isfinite(S)) and np.all(np.isfinite(Y))):
            raise ValueError("slice matrices must be finite")
        S.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self):
        return self.S.shape[0]

    @property
    def mu1(self):
        return self.spec1.mu

    @property
    def mu2(self):
        return self.spec2.mu

    @property
    def tau(self):
        return self.mu1**2 - self.mu2**2

    @property
    def kind(self):
        return _kind_of(self.spec1, self.spec2)

    @property
    def m(self):
        return {2: self.n // 2, 1: (self.n - 1) // 2, 0: (self.n - 2) // 2}.get(self.kind)


@dataclass(frozen=True)
class CharShape:
    """``P(z) = (z - (mu1+mu2))^p (z - (mu1-mu2))^q prod (z^2 - x_i)``."""

    p: int
    q: int
    x_list: np.ndarray
    even_factor: Polynomial = field(repr=False)
    odd_leakage: float = 0.0

    def polynomial(self, mu1, mu2):
        lin = Polynomial.from_roots([mu1 + mu2] * self.p + [mu1 - mu2] * self.q)
        return lin * Polynomial.from_roots(self.x_list).compose_square()


def orbit_sample(spec, rng, max_cond=1e6):
    """Random element ``mu (2P - I)`` of the orbit, P a rank-k projector
    ``G diag(I_k, 0) G^-1`` with complex Gaussian G."""
    n = spec.n
    while True:
        G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if np.linalg.cond(G) <= max_cond:
            break
    P = G @ np.diag([1.0] * spec.k + [0.0] * spec.l) @ np.linalg.inv(G)
    return spec.mu * (2 * P - np.eye(n))


def residuals(pt):
    """The four defining residuals of a slice point, by name."""
    S, Y, n = pt.S, pt.Y, pt.n
    eye = np.eye(n)
    d1, d2 = pt.spec1.d, pt.spec2.d
    return {
        "anticommutator": sup(S @ Y + Y @ S - pt.tau * eye),
        "orbit2": sup((Y - S / 2) @ (Y - S / 2) - pt.mu2**2 * eye),
        "trace_S": abs(np.trace(S) - (d1 * pt.mu1 + d2 * pt.mu2)),
        "trace_Y": abs(np.trace(Y) - 0.5 * (d1 * pt.mu1 - d2 * pt.mu2)),
    }


def slice_residual(pt):
    """Largest of the four defining residuals; small iff ``pt`` is on the slice."""
    return max(residuals(pt).values())


def slice_to_pair(pt, tol=None):
    """``(A, B) = (S/2 + Y, S/2 - Y)``."""
    tol = get_tol(tol)
    scale = 1.0 + sup(pt.S) ** 2 + sup(pt.Y) ** 2
    if slice_residual(pt) > tol * scale:
        raise NotOnSlice(f"residual {slice_residual(pt):.3e} exceeds tolerance")
    return pt.S / 2 + pt.Y, pt.S / 2 - pt.Y


def pair_to_slice(A, B, spec1, spec2):
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return SlicePoint(A + B, (A - B) / 2, spec1, spec2)


def _deflate(P, root, times, tol):
    for _ in range(times):
        quot, rem = poly_divmod(P, Polynomial([-root, 1.0]))
        if abs(rem(0.0)) > tol * (1.0 + P.norm()):
            raise ShapeViolation(f"{root} is not a root of the characteristic polynomial")
        P = quot
    return P


def char_shape(pt, tol=None):
    """Factor the characteristic polynomial of S as the shape theorem predicts.

    Strips ``p = (d1+d2)/2`` roots at ``mu1 + mu2`` and ``q = (d1-d2)/2``
    roots at ``mu1 - mu2`` and checks that what is left is even in z.
    """
    tol = get_tol(tol)
    s1, s2 = pt.spec1, pt.spec2
    if s1.d < s2.d:
        s1, s2 = s2, s1
    if s1.d + s2.d > 2 or pt.kind is None:
        raise ShapeViolation("orbit pair is outside the nonempty cases")
    p, q = (s1.d + s2.d) // 2, (s1.d - s2.d) // 2
    P = char_poly(pt.S)
    P = _deflate(P, s1.mu + s2.mu, p, tol)
    P = _deflate(P, s1.mu - s2.mu, q, tol)
    even, odd = P.even_odd()
    leakage = odd.norm() / (1.0 + P.norm())
    if leakage > 1e2 * tol:
        raise ShapeViolation(f"odd coefficients of the remaining factor ({leakage:.2e}) are not zero")
    xs = roots(even) if even.degree >= 1 else np.zeros(0, dtype=complex)
    return CharShape(p, q, xs, even, leakage)


def is_empty(spec1, spec2):
    """The slice is empty exactly when ``|d1| + |d2| > 2``."""
    return abs(spec1.d) + abs(spec2.d) > 2


def rank_obstruction(spec1, spec2, rng, samples=100, tol=None):
    """Rank sums ``rank(A - mu1) + rank(B - mu2)`` over random orbit samples.

    Each rank equals the multiplicity of ``-mu``, so the sum is
    ``l1 + l2``; any element of ``A + B`` in the slice needs rank >= n-1.
    """
    if spec1.nilpotent or spec2.nilpotent:
        raise DegenerateParameter("rank obstruction needs semisimple orbits")
    n = spec1.n
    out = []
    for _ in range(samples):
        A = orbit_sample(spec1, rng)
        B = orbit_sample(spec2, rng)
        eye = np.eye(n)
        r = (rank(A - spec1.mu * eye, 1e-8, np.linalg.norm(A, 2))
             + rank(B - spec2.mu * eye, 1e-8, np.linalg.norm(B, 2)))
        out.append(r)
    return out


def emptiness_certificate(spec1, spec2, rng=None, samples=0):
    """Return True when the slice is provably empty.

    With an ``rng`` and ``samples > 0`` the rank obstruction behind the
    criterion is also reproduced numerically; a sample violating it raises
    :class:`ShapeViolation`.
    """
    empty = is_empty(spec1, spec2)
    if empty and rng is not None and samples > 0:
        n = spec1.n
        bound = spec1.l + spec2.l
        for r in rank_obstruction(spec1, spec2, rng, samples):
            if r != bound or r >= n - 1:
                raise ShapeViolation(f"rank sum {r} does not certify emptiness")
    return empty


# -- canonical forms ---------------------------------------------------------

def _alphas(mu1, mu2):
    return mu1 + mu2, mu1 - mu2


def canonical_basis(kind, Q, mu1, mu2):
    """Columns: the canonical basis of ``C[z]/(P)`` in monomial coordinates.

    ``P = (z - a+) Q`` for kind 1 and ``(z - a+)(z - a-) Q`` for kind 0,
    where ``a+- = mu1 +- mu2``. The basis is ``1, ..., z^(2m-1)`` followed
    by ``Q`` (kind 1) or by ``(z - a-) Q / (2 mu2)`` and
    ``-(z - a+) Q / (2 mu2)`` (kind 0).
    """
    ap, am = _alphas(complex(mu1), complex(mu2))
    d = Q.degree
    if kind == 1:
        T = np.eye(d + 1, dtype=complex)
        T[:, d] = Q.padded(d + 1)
        return T
    if kind == 0:
        if mu2 == 0:
            raise DegenerateParameter("canonical form for D0 needs mu2 != 0")
        T = np.eye(d + 2, dtype=complex)
        lin_m = Polynomial([-am, 1.0])
        lin_p = Polynomial([-ap, 1.0])
        T[:, d] = ((lin_m * Q) / (2 * mu2)).padded(d + 2)
        T[:, d + 1] = (-(lin_p * Q) / (2 * mu2)).padded(d + 2)
        return T
    raise ValueError("canonical forms exist for kinds 0 and 1 only")


def _border(kind):
    return {1: 1, 0: 2}[kind]


def check_canonical(pt, tol=None):
    """Raise :class:`NotCanonical` unless ``pt`` has the bordered block shape."""
    tol = get_tol(tol)
    kind = pt.kind
    if kind not in (0, 1):
        raise NotCanonical("only D1 and D0 points have a bordered canonical form")
    ap, am = _alphas(pt.mu1, pt.mu2)
    b = _border(kind)
    n = pt.n
    core = n - b
    S, Y = pt.S, pt.Y
    scale = tol * (1.0 + sup(S) + sup(Y))
    ok = is_companion(S[:core, :core], scale)
    ok &= sup(S[:core, core:]) <= scale and sup(Y[:core, core:]) <= scale
    e = np.zeros(core)
    e[-1] = 1.0
    diag_S = [ap] if kind == 1 else [ap, am]
    diag_Y = [am / 2] if kind == 1 else [am / 2, ap / 2]
    for r in range(b):
        ok &= sup(S[core + r, :core] - e) <= scale
    ok &= sup(S[core:, core:] - np.diag(diag_S)) <= scale
    ok &= sup(Y[core:, core:] - np.diag(diag_Y)) <= scale
    if not ok:
        raise NotCanonical("pair is not in bordered canonical form")


def to_canonical(pt, tol=None):
    """Change basis from monomials to the canonical basis.

    ``pt`` must have S in companion form. The result has the bordered
    lower-triangular shape with the D2 core in the upper-left block.
    """
    if not is_companion(pt.S, tol):
        raise NotCanonical("to_canonical expects S in companion form")
    shape = char_shape(pt, tol)
    if pt.kind not in (0, 1):
        raise NotCanonical("only D1 and D0 points have a canonical form")
    Q = shape.even_factor.compose_square()
    T = canonical_basis(pt.kind, Q, pt.mu1, pt.mu2)
    Ti = np.linalg.inv(T)
    out = SlicePoint(Ti @ pt.S @ T, Ti @ pt.Y @ T, pt.spec1, pt.spec2)
    check_canonical(out, tol=1e2 * get_tol(tol))
    return out


def to_companion(pt, tol=None):
    """Inverse of :func:`to_canonical`; S comes back exactly in companion form."""
    check_canonical(pt, tol)
    core = pt.n - _border(pt.kind)
    Q = Polynomial(np.concatenate([-pt.S[:core, core - 1], [1.0]]))
    T = canonical_basis(pt.kind, Q, pt.mu1, pt.mu2)
    Ti = np.linalg.inv(T)
    lin = Polynomial.from_roots([pt.mu1 + pt.mu2] + ([pt.mu1 - pt.mu2] if pt.kind == 0 else []))
    S = companion(lin * Q)
    return SlicePoint(S, T @ pt.Y @ Ti, pt.spec1, pt.spec2)


# -- maps between the families ------------------------------------------------

def extract_phi(pt, tol=None):
    """Upper-left ``(S0, Y0)`` block: a point of ``D_{2,m}(mu1, mu2)``."""
    check_canonical(pt, tol)
    core = pt.n - _border(pt.kind)
    m = core // 2
    s1, s2 = family_specs(2, m, pt.mu1, pt.mu2)
    return SlicePoint(pt.S[:core, :core], pt.Y[:core, :core], s1, s2)


def _minor(pt, drop):
    keep = [i for i in range(pt.n) if i != drop]
    return pt.S[np.ix_(keep, keep)], pt.Y[np.ix_(keep, keep)]


def extract_phi1(pt, tol=None):
    """Drop the last row and column of a D0 point: a point of ``D_{1,m}(mu1, mu2)``."""
    check_canonical(pt, tol)
    if pt.kind != 0:
        raise NotCanonical("phi1 is defined on D0 points")
    S, Y = _minor(pt, pt.n - 1)
    s1, s2 = family_specs(1, pt.m, pt.mu1, pt.mu2)
    return SlicePoint(S, Y, s1, s2)


def extract_phi2(pt, tol=None):
    """Drop the second-to-last row and column: a point of ``D_{1,m}(mu1, -mu2)``."""
    check_canonical(pt, tol)
    if pt.kind != 0:
        raise NotCanonical("phi2 is defined on D0 points")
    S, Y = _minor(pt, pt.n - 2)
    s1, s2 = family_specs(1, pt.m, pt.mu1, -pt.mu2)
    return SlicePoint(S, Y, s1, s2)


def extend_phi_inverse(core, v, mu_sign=1):
    """Border a ``D_{2,m}`` point with the row vector ``v``.

    Returns the bordered pair in the ``D_{1,m}(mu1, mu_sign * mu2)`` shape;
    whether it lies on the slice is decided by :func:`slice_residual`.
    """
    if core.kind != 2:
        raise NotCanonical("core must be a D2 point")
    mu1, mu2 = core.mu1, mu_sign * core.mu2
    ap, am = _alphas(mu1, mu2)
    c = core.n
    S = np.zeros((c + 1, c + 1), dtype=complex)
    Y = np.zeros_like(S)
    S[:c, :c] = core.S
    Y[:c, :c] = core.Y
    S[c, c - 1] = 1.0
    S[c, c] = ap
    Y[c, :c] = v
    Y[c, c] = am / 2
    s1, s2 = family_specs(1, c // 2, mu1, mu2)
    return SlicePoint(S, Y, s1, s2)


def assemble_d0(core, v1, v2):
    """Bordered D0 candidate from a D2 core and the two border rows."""
    if core.kind != 2:
        raise NotCanonical("core must be a D2 point")
    ap, am = _alphas(core.mu1, core.mu2)
    c = core.n
    S = np.zeros((c + 2, c + 2), dtype=complex)
    Y = np.zeros_like(S)
    S[:c, :c] = core.S
    Y[:c, :c] = core.Y
    S[c, c - 1] = S[c + 1, c - 1] = 1.0
    S[c, c], S[c + 1, c + 1] = ap, am
    Y[c, :c], Y[c + 1, :c] = v1, v2
    Y[c, c], Y[c + 1, c + 1] = am / 2, ap / 2
    s1, s2 = family_specs(0, c // 2, core.mu1, core.mu2)
    return SlicePoint(S, Y, s1, s2)
