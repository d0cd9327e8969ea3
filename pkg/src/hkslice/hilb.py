"""Hilbert schemes of points transverse to a projection.

For an affine variety ``X`` in C^k with the projection onto the last
coordinate z, a point of ``X^[n]_pi`` is a monic ``q(z)`` of degree n and
coordinate polynomials ``w_1(z), ..., w_{k-1}(z)`` of degree < n with

    f(w_1(z), ..., w_{k-1}(z), z) = 0  mod q(z)

for every defining polynomial f of X.

The module also realises the isomorphism between ``D_{k,m}`` and the
transverse Hilbert scheme of m points on the m = 1 surface (projection to
x), in two independent ways:

``method="vandermonde"``
    diagonalise into 2x2 blocks at the distinct roots of q and conjugate
    back with the closed-form Vandermonde inverse;
``method="direct"``
    write Y as a block matrix of multiplication operators on
    ``C[x]/(q)``. This needs no roots and covers confluent q.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import TOLERANCES, get_tol
from .errors import (ConfluentRoots, DegenerateParameter, NodesTooClose,
                     NotCanonical, NotOnVariety, PointOffVariety)
from .linalg import companion, is_companion, poly_of_matrix, sup
from .poly import (Polynomial, check_separation, lagrange_interpolate,
                   poly_mod, roots, vandermonde, vandermonde_inverse)
from .slices import SlicePoint, family_specs, to_canonical
from .surfaces import (SurfaceParams, d0_border_entries, d0_coords,
                       d1_core_entries, surface_equation)

__all__ = [
    "AffineModel",
    "HilbPoint",
    "NakajimaTriple",
    "plane_product_model",
    "punctured_line_model",
    "double_cover_model",
    "surface_model",
    "hilb_residual",
    "gather",
    "scatter",
    "core_polynomials",
    "pols_residual",
    "hilb_to_slice",
    "slice_to_hilb",
    "nakajima_triple",
    "two_point_equations",
    "rational_map_from_D1",
    "d1_from_rational_map",
    "multiplication_matrix",
    "multiset_distance",
]


@dataclass(frozen=True)
class AffineModel:
    """Affine variety with the projection onto the last coordinate.

    ``generators`` are callables of all ``dim`` coordinates; they must work
    on complex scalars and on :class:`Polynomial` arguments.
    """

    names: tuple
    generators: tuple
    label: str = ""
    degree: int = 3

    @property
    def dim(self):
        return len(self.names)

    def evaluate(self, point):
        return np.array([f(*point) for f in self.generators], dtype=complex)


def plane_product_model():
    """C^2 with pi(x, y) = xy, embedded as ``xy = z``."""
    return AffineModel(("x", "y", "z"), (lambda x, y, z: x * y - z,), "plane xy=z", 2)


def punctured_line_model():
    """C* x C as ``xy = 1`` with pi = z."""
    return AffineModel(("x", "y", "z"), (lambda x, y, z: x * y - 1,), "xy=1", 2)


def double_cover_model(alpha=0.0):
    """The double cover surface ``x^2 - z y^2 - 1 + alpha y = 0`` with pi = z."""
    alpha = complex(alpha)
    return AffineModel(
        ("x", "y", "z"),
        (lambda x, y, z: x * x - z * y * y - 1 + alpha * y,),
        f"x^2-zy^2-1+({alpha})y",
        3,
    )


def surface_model(params):
    """One of the three m = 1 surfaces, coordinates ordered with x last."""
    k = params.kind
    if k == 2:
        names = ("a", "c", "x")
        f = lambda a, c, x: surface_equation(params, a, c, x)  # noqa: E731
    elif k == 1:
        names = ("y", "z", "x")
        f = lambda y, z, x: surface_equation(params, x, y, z)  # noqa: E731
    else:
        names = ("t", "w", "x")
        f = lambda t, w, x: surface_equation(params, t, w, x)  # noqa: E731
    return AffineModel(names, (f,), f"D{k}({params.mu1}, {params.mu2})", 3)


@dataclass(frozen=True)
class HilbPoint:
    q: Polynomial
    coords: tuple

    def __post_init__(self):
        q = self.q if isinstance(self.q, Polynomial) else Polynomial(self.q)
        coords = tuple(c if isinstance(c, Polynomial) else Polynomial(c) for c in self.coords)
        if q.degree < 1 or not q.is_monic():
            raise ValueError("q must be monic of degree >= 1")
        for c in coords:
            if c.degree >= q.degree:
                raise ValueError("coordinate polynomials must have degree < deg q")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self):
        return self.q.degree


@dataclass(frozen=True)
class NakajimaTriple:
    B1: np.ndarray
    B2: np.ndarray
    S: np.ndarray

    def product_residual(self):
        return sup(self.B1 @ self.B2 - self.S)

    def commutator_residual(self):
        return sup(self.B1 @ self.B2 - self.B2 @ self.B1)


def _check_n_coords(model, pt):
    if len(pt.coords) != model.dim - 1:
        raise ValueError(f"{model.label}: expected {model.dim - 1} coordinate polynomials")


def hilb_residual(model, pt):
    """Largest coefficient of ``f(w(z), z) mod q`` over the generators."""
    _check_n_coords(model, pt)
    z = Polynomial.z()
    worst = 0.0
    for f in model.generators:
        r = poly_mod(f(*pt.coords, z), pt.q)
        worst = max(worst, r.norm())
    return worst


def gather(model, points, sep=None, tol=None):
    """Combine m points with distinct projections into one Hilbert point."""
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    if pts.shape[1] != model.dim:
        raise ValueError(f"points must have {model.dim} coordinates")
    tol = get_tol(tol)
    for p in pts:
        scale = 1.0 + np.abs(p).max() ** model.degree
        r = np.abs(model.evaluate(p)).max()
        if r > tol * scale:
            raise PointOffVariety(f"point {p} is off {model.label} (residual {r:.3e})")
    zs = check_separation(pts[:, -1], sep)
    q = Polynomial.from_roots(zs)
    coords = tuple(lagrange_interpolate(zs, pts[:, j], sep) for j in range(model.dim - 1))
    return HilbPoint(q, coords)


def _distinct_roots(q, sep=None):
    xs = roots(q)
    radius = TOLERANCES.cluster * (1.0 + np.abs(xs).max()) if sep is None else sep
    try:
        check_separation(xs, radius)
    except NodesTooClose as exc:
        raise ConfluentRoots(str(exc)) from None
    return xs


def scatter(model, pt, sep=None):
    """The points of X underlying ``pt``; needs simple roots of q."""
    _check_n_coords(model, pt)
    zs = _distinct_roots(pt.q, sep)
    cols = [c(zs) for c in pt.coords] + [zs]
    return np.column_stack(cols)


def multiset_distance(P, Q):
    """Largest row discrepancy under the best matching of two point sets."""
    P = np.atleast_2d(np.asarray(P, dtype=complex))
    Q = np.atleast_2d(np.asarray(Q, dtype=complex))
    if P.shape != Q.shape:
        raise ValueError("point sets differ in size")
    cost = np.abs(P[:, None, :] - Q[None, :, :]).max(axis=2)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if rows.size else 0.0


# -- D_{k,m} versus Hilbert schemes of the surfaces ----------------------------

def core_polynomials(kind, pt, params):
    """``(a(x), c(x))`` of the D2 core, reduced mod q."""
    q = pt.q
    x = Polynomial.z()
    if kind == 2:
        a, c = pt.coords
    elif kind == 1:
        y, z = pt.coords
        a, _, c = d1_core_entries(params, x, y, z)
    else:
        t, w = pt.coords
        y, z, _, _ = d0_border_entries(params, x, t, w)
        a, _, c = d1_core_entries(params, x, y, z)
    return poly_mod(a, q), poly_mod(c, q)


def pols_residual(kind, pt, params):
    """Residual of the D2 surface equation for the core polynomials mod q."""
    a, c = core_polynomials(kind, pt, params)
    p2 = SurfaceParams(2, params.mu1, params.mu2)
    return hilb_residual(surface_model(p2), HilbPoint(pt.q, (a, c)))


def multiplication_matrix(g, q):
    """Matrix of multiplication by g on ``C[x]/(q)`` in the monomial basis."""
    m = q.degree
    out = np.zeros((m, m), dtype=complex)
    col = poly_mod(g, q)
    x = Polynomial.z()
    for j in range(m):
        out[:, j] = col.padded(m)
        col = poly_mod(col * x, q)
    return out


def _leading_functional(F, q):
    """Coefficient of ``x^(m-1)`` in ``F mod q``."""
    m = q.degree
    return poly_mod(F, q).padded(m)[m - 1]


def _border_row(q, y, z):
    m = q.degree
    row = np.zeros(2 * m, dtype=complex)
    xk = Polynomial([1.0])
    x = Polynomial.z()
    for k in range(m):
        row[2 * k] = _leading_functional(xk * y, q)
        row[2 * k + 1] = _leading_functional(xk * z, q)
        xk = xk * x
    return row


def _interleave(even, odd):
    """Block matrix ``[[E00, E01], [E10, E11]]`` in (even, odd) ordering ->
    natural ordering of ``1, z, z^2, ...``."""
    m = even[0].shape[0]
    out = np.zeros((2 * m, 2 * m), dtype=complex)
    out[0::2, 0::2] = even[0]
    out[0::2, 1::2] = even[1]
    out[1::2, 0::2] = odd[0]
    out[1::2, 1::2] = odd[1]
    return out


def _border_shape(kind, params, core_n):
    ap, am = params.alpha_plus, params.alpha_minus
    if kind == 1:
        return [ap], [am / 2]
    if kind == 0:
        return [ap, am], [am / 2, ap / 2]
    return [], []


def _bordered(kind, params, S_core, Y_core, rows):
    core = S_core.shape[0]
    dS, dY = _border_shape(kind, params, core)
    b = len(dS)
    S = np.zeros((core + b, core + b), dtype=complex)
    Y = np.zeros_like(S)
    S[:core, :core] = S_core
    Y[:core, :core] = Y_core
    for r in range(b):
        S[core + r, core - 1] = 1.0
        S[core + r, core + r] = dS[r]
        Y[core + r, :core] = rows[r]
        Y[core + r, core + r] = dY[r]
    return S, Y


def _border_polys(kind, params, pt):
    """Border rows as pairs of polynomials mod q."""
    q = pt.q
    x = Polynomial.z()
    if kind == 1:
        y, z = pt.coords
        return [(y, z)]
    if kind == 0:
        t, w = pt.coords
        y, z, u, v = d0_border_entries(params, x, t, w)
        return [(poly_mod(y, q), poly_mod(z, q)), (poly_mod(u, q), poly_mod(v, q))]
    return []


def _hilb_to_slice_direct(kind, pt, params):
    q = pt.q
    x = Polynomial.z()
    a, c = core_polynomials(kind, pt, params)
    Ma = multiplication_matrix(a, q)
    Mc = multiplication_matrix(c, q)
    Mb = multiplication_matrix(params.tau - x * c, q)
    Y_core = _interleave((Ma, Mb), (Mc, -Ma))
    S_core = companion(q.compose_square())
    rows = [_border_row(q, yy, zz) for yy, zz in _border_polys(kind, params, pt)]
    return _bordered(kind, params, S_core, Y_core, rows)


def _f_basis(xs, normalised):
    """Change of basis between the block basis ``f_i, z f_i`` and monomials.

    Returns ``(T, Tinv)``: columns of T are the block basis vectors in
    monomial coordinates. ``f_i`` is the Lagrange basis polynomial in
    ``z^2`` (normalised) or ``prod_{j != i} (z^2 - x_j)``.
    """
    m = xs.size
    Vinv = vandermonde_inverse(xs)
    V = vandermonde(xs)
    if normalised:
        w = np.ones(m, dtype=complex)
    else:
        w = np.array([np.prod(xs[i] - np.delete(xs, i)) for i in range(m)])
    Z = np.zeros((m, m), dtype=complex)
    T = _interleave((Vinv * w[None, :], Z), (Z, Vinv * w[None, :]))
    Tinv = _interleave((V / w[:, None], Z), (Z, V / w[:, None]))
    return T, Tinv


def _hilb_to_slice_vandermonde(kind, pt, params):
    xs = _distinct_roots(pt.q)
    m = xs.size
    x = Polynomial.z()
    if kind == 2:
        a_p, c_p = pt.coords
        a, c = a_p(xs), c_p(xs)
        rows_f = []
    elif kind == 1:
        yv, zv = (p(xs) for p in pt.coords)
        a, _, c = d1_core_entries(params, xs, yv, zv)
        rows_f = [np.ravel(np.column_stack([yv, zv]))]
    else:
        tv, wv = (p(xs) for p in pt.coords)
        yv, zv, uv, vv = d0_border_entries(params, xs, tv, wv)
        a, _, c = d1_core_entries(params, xs, yv, zv)
        rows_f = [np.ravel(np.column_stack([yv, zv])), np.ravel(np.column_stack([uv, vv]))]
    S_f = np.zeros((2 * m, 2 * m), dtype=complex)
    Y_f = np.zeros_like(S_f)
    for i in range(m):
        sl = slice(2 * i, 2 * i + 2)
        S_f[sl, sl] = [[0, xs[i]], [1, 0]]
        Y_f[sl, sl] = [[a[i], params.tau - xs[i] * c[i]], [c[i], -a[i]]]
    T, Tinv = _f_basis(xs, normalised=(kind == 2))
    S_core = T @ S_f @ Tinv
    Y_core = T @ Y_f @ Tinv
    Q = pt.q.compose_square()
    if not is_companion(S_core, 1e3 * get_tol() * (1.0 + Q.norm())):
        raise NotCanonical("block basis change did not produce a companion matrix")
    rows = [r @ Tinv for r in rows_f]
    return _bordered(kind, params, companion(Q), Y_core, rows)


def hilb_to_slice(kind, pt, params, method="vandermonde"):
    """Slice point of ``D_{kind,m}`` for a Hilbert point of the surface.

    For kind 2 the result has S in companion form; for kinds 1 and 0 it is
    in bordered canonical form (see :func:`hkslice.slices.to_companion`).
    """
    if params.kind != kind:
        raise ValueError("params.kind does not match kind")
    if kind == 0 and params.mu2 == 0:
        raise DegenerateParameter("the D0 construction needs mu2 != 0")
    if method == "vandermonde":
        S, Y = _hilb_to_slice_vandermonde(kind, pt, params)
    elif method == "direct":
        S, Y = _hilb_to_slice_direct(kind, pt, params)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SlicePoint(S, Y, *family_specs(kind, pt.n, params.mu1, params.mu2))


def _hankel_solve(q, row_vals):
    """Solve ``l(x^k y) = row_vals[k]`` for y, l the leading functional."""
    m = q.degree
    x = Polynomial.z()
    H = np.zeros((m, m), dtype=complex)
    for k in range(m):
        for j in range(m):
            H[k, j] = _leading_functional(x ** (k + j), q)
    return Polynomial(np.linalg.solve(H, row_vals))


def _core_q(pt, tol):
    core = pt.n - {2: 0, 1: 1, 0: 2}[pt.kind]
    S0 = pt.S[:core, :core]
    Q = Polynomial(np.concatenate([-S0[:, -1], [1.0]]))
    q, odd = Q.even_odd()
    if odd.norm() > 1e2 * get_tol(tol) * (1.0 + Q.norm()):
        raise NotCanonical("core characteristic polynomial is not even")
    return core, q


def slice_to_hilb(pt, method="vandermonde", tol=None):
    """Inverse of :func:`hilb_to_slice`.

    Kind 2 points need S in companion form; kind 1 and 0 points may be in
    companion form (they are moved to the canonical form first) or already
    canonical.
    """
    kind = pt.kind
    if kind not in (0, 1, 2):
        raise ValueError("not a slice point of one of the three families")
    if kind == 2 and not is_companion(pt.S, tol):
        raise NotCanonical("kind-2 slice_to_hilb expects S in companion form")
    if kind in (0, 1) and is_companion(pt.S, tol):
        pt = to_canonical(pt, tol)
    params = SurfaceParams(kind, pt.mu1, pt.mu2)
    core, q = _core_q(pt, tol)
    m = q.degree
    Y = pt.Y
    if method == "direct":
        col = Y[:core, 0]
        a, c = Polynomial(col[0::2]), Polynomial(col[1::2])
        rows = [(_hankel_solve(q, Y[core + r, :core][0::2]), _hankel_solve(q, Y[core + r, :core][1::2]))
                for r in range(pt.n - core)]
    elif method == "vandermonde":
        xs = _distinct_roots(q)
        T, Tinv = _f_basis(xs, normalised=(kind == 2))
        Y_f = Tinv @ Y[:core, :core] @ T
        a = lagrange_interpolate(xs, np.diag(Y_f)[0::2])
        c = lagrange_interpolate(xs, Y_f[1::2, 0::2].diagonal())
        rows = []
        for r in range(pt.n - core):
            rf = Y[core + r, :core] @ T
            rows.append((lagrange_interpolate(xs, rf[0::2]), lagrange_interpolate(xs, rf[1::2])))
    else:
        raise ValueError(f"unknown method {method!r}")

    def fit(p):
        return Polynomial(poly_mod(p, q).padded(m))

    if kind == 2:
        coords = (fit(a), fit(c))
    elif kind == 1:
        coords = (fit(rows[0][0]), fit(rows[0][1]))
    else:
        (y, _), (u, _) = rows
        t, w = d0_coords(params, Polynomial.z(), y, u)
        coords = (fit(t), fit(w))
    return HilbPoint(q, coords)


# -- C^2 with pi = xy ------------------------------------------------------------

def nakajima_triple(pt):
    """``(B1, B2, S)`` with ``S = companion(q)``, ``B1 = x(S)``, ``B2 = y(S)``."""
    S = companion(pt.q)
    xz, yz = pt.coords
    return NakajimaTriple(poly_of_matrix(xz, S), poly_of_matrix(yz, S), S)


def two_point_equations(x0, x1, y0, y1, q0, q1):
    """Residuals of the two equations cutting out the 2-point scheme of C^2
    for ``q(z) = z^2 - q1 z - q0``."""
    return (x0 * y0 + x1 * y1 * q0, x1 * y0 + x0 * y1 + x1 * y1 * q1 - 1)


# -- based rational maps ---------------------------------------------------------

def rational_map_from_D1(pt, tol=None):
    """``(p(u), q(u^2))`` with ``p(u) = x(u^2) + u y(u^2)``.

    ``pt`` is a Hilbert point of the double cover ``x^2 - z y^2 = 1``. The
    defining congruence becomes ``p(u) p(-u) = 1 mod q(u^2)``.
    """
    xz, yz = pt.coords
    p = xz.compose_square() + Polynomial.z() * yz.compose_square()
    Q = pt.q.compose_square()
    r = poly_mod(p * p.reflect() - 1, Q)
    if r.norm() > get_tol(tol) * (1.0 + p.norm() ** 2):
        raise NotOnVariety(f"p(u)p(-u) - 1 mod q(u^2) has size {r.norm():.3e}")
    return p, Q


def d1_from_rational_map(p, Q):
    """Parity split inverse of :func:`rational_map_from_D1`."""
    q, odd = Q.even_odd()
    if odd.norm() > 0:
        raise NotOnVariety("denominator must be a polynomial in u^2")
    n = q.degree
    xz, yz = p.even_odd()
    return HilbPoint(q, (Polynomial(xz.coeffs[:n]), Polynomial(yz.coeffs[:n])))
