"""The three ALF surfaces arising as the m = 1 slices.

* kind 2, coordinates ``(a, c, x)``:
  ``a^2 - x c^2 + x/4 + (mu1^2 - mu2^2) c - (mu1^2 + mu2^2)/2 = 0``
* kind 1, coordinates ``(x, y, z)``: ``y^2 x - z^2 + 1/4 + (mu1 - mu2) y = 0``
* kind 0, coordinates ``(t, w, x)``: ``t^2 - x w^2 + w = 0``

Each surface point is turned into an explicit ``(S, Y)`` pair of size
2, 3 or 4 and back.
"""

from dataclasses import dataclass

import numpy as np

from .config import get_tol
from .errors import DegenerateParameter, NotCanonical, NotOnSurface
from .linalg import sup
from .slices import SlicePoint, check_canonical, family_specs

__all__ = [
    "SurfaceParams",
    "SurfacePoint",
    "COORDINATES",
    "surface_equation",
    "surface_residual",
    "surface_scale",
    "sample_surface_point",
    "reconstruct_n2",
    "reconstruct_n3",
    "reconstruct_n4",
    "d0_coords",
    "d0_to_yu",
    "reconstruct",
    "extract_coords",
    "d1_core_entries",
    "d0_border_entries",
]

COORDINATES = {2: ("a", "c", "x"), 1: ("x", "y", "z"), 0: ("t", "w", "x")}


@dataclass(frozen=True)
class SurfaceParams:
    kind: int
    mu1: complex
    mu2: complex = 0j

    def __post_init__(self):
        if self.kind not in (0, 1, 2):
            raise ValueError(f"kind must be 0, 1 or 2, got {self.kind}")
        object.__setattr__(self, "mu1", complex(self.mu1))
        object.__setattr__(self, "mu2", complex(self.mu2))

    @property
    def tau(self):
        return self.mu1**2 - self.mu2**2

    @property
    def alpha_plus(self):
        return self.mu1 + self.mu2

    @property
    def alpha_minus(self):
        return self.mu1 - self.mu2


@dataclass(frozen=True)
class SurfacePoint:
    """Coordinates in the order given by ``COORDINATES[params.kind]``."""

    coords: tuple
    params: SurfaceParams

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if len(coords) != 3:
            raise ValueError("surface points have three coordinates")
        object.__setattr__(self, "coords", coords)

    def __getitem__(self, name):
        return self.coords[COORDINATES[self.params.kind].index(name)]

    @property
    def x(self):
        return self["x"]


def surface_equation(params, *coords):
    """Defining polynomial evaluated at ``coords`` (scalars or polynomials)."""
    k = params.kind
    if k == 2:
        a, c, x = coords
        return a * a - x * c * c + x / 4 + params.tau * c - (params.mu1**2 + params.mu2**2) / 2
    if k == 1:
        x, y, z = coords
        return y * y * x - z * z + 0.25 + params.alpha_minus * y
    t, w, x = coords
    return t * t - x * w * w + w


def surface_scale(pt):
    """Magnitude of the largest monomial, used to make residuals relative."""
    p = pt.params
    absc = [abs(c) for c in pt.coords]
    if p.kind == 2:
        a, c, x = absc
        terms = [a * a, x * c * c, x / 4, abs(p.tau) * c, abs(p.mu1) ** 2 + abs(p.mu2) ** 2]
    elif p.kind == 1:
        x, y, z = absc
        terms = [y * y * x, z * z, 0.25, abs(p.alpha_minus) * y]
    else:
        t, w, x = absc
        terms = [t * t, x * w * w, w]
    return 1.0 + max(terms)


def surface_residual(pt):
    return abs(surface_equation(pt.params, *pt.coords))


def _require_on_surface(pt, tol):
    tol = get_tol(tol)
    r = surface_residual(pt)
    if r > tol * surface_scale(pt):
        raise NotOnSurface(f"surface residual {r:.3e} exceeds tolerance")


def sample_surface_point(params, rng, radius=1.0):
    """Random point: two coordinates uniform in a disk, the third from the
    quadratic, with the root chosen at random."""

    def disk():
        r = radius * np.sqrt(rng.uniform())
        return r * np.exp(2j * np.pi * rng.uniform())

    sign = 1 if rng.uniform() < 0.5 else -1
    k = params.kind
    x = disk()
    if k == 2:
        c = disk()
        a = sign * np.sqrt(x * c * c - x / 4 - params.tau * c + (params.mu1**2 + params.mu2**2) / 2 + 0j)
        coords = (a, c, x)
    elif k == 1:
        y = disk()
        z = sign * np.sqrt(y * y * x + 0.25 + params.alpha_minus * y + 0j)
        coords = (x, y, z)
    else:
        w = disk()
        t = sign * np.sqrt(x * w * w - w + 0j)
        coords = (t, w, x)
    return SurfacePoint(coords, params)


def reconstruct_n2(pt, tol=None):
    """2x2 pair ``S = [[0, x], [1, 0]]``, ``Y = [[a, tau - c x], [c, -a]]``."""
    if pt.params.kind != 2:
        raise ValueError("reconstruct_n2 needs a kind-2 point")
    _require_on_surface(pt, tol)
    p = pt.params
    a, c, x = pt.coords
    S = np.array([[0, x], [1, 0]], dtype=complex)
    Y = np.array([[a, p.tau - c * x], [c, -a]], dtype=complex)
    return SlicePoint(S, Y, *family_specs(2, 1, p.mu1, p.mu2))


def d1_core_entries(params, x, y, z):
    """``(a, b, c)`` of the 2x2 core determined by a border ``(y, z)``.

    Works for scalars and for polynomial arguments alike.
    """
    ap, am = params.alpha_plus, params.alpha_minus
    c = -ap * y - z
    a = ap * z + x * y + am / 2
    b = params.tau - c * x
    return a, b, c


def reconstruct_n3(pt, tol=None):
    """3x3 bordered pair for a kind-1 point ``(x, y, z)``."""
    if pt.params.kind != 1:
        raise ValueError("reconstruct_n3 needs a kind-1 point")
    _require_on_surface(pt, tol)
    p = pt.params
    x, y, z = pt.coords
    a, b, c = d1_core_entries(p, x, y, z)
    S = np.array([[0, x, 0], [1, 0, 0], [0, 1, p.alpha_plus]], dtype=complex)
    Y = np.array([[a, b, 0], [c, -a, 0], [y, z, p.alpha_minus / 2]], dtype=complex)
    return SlicePoint(S, Y, *family_specs(1, 1, p.mu1, p.mu2))


def d0_coords(params, x, y, u):
    """``(t, w)`` from the two border entries ``y`` and ``u``."""
    if params.mu2 == 0:
        raise DegenerateParameter("the D0 coordinates need mu2 != 0")
    w = (y - u) / (2 * params.mu2)
    t = y + params.alpha_minus * w
    return t, w


def d0_to_yu(params, t, w):
    """Inverse of :func:`d0_coords`: ``y = t - a- w``, ``u = t - a+ w``."""
    return t - params.alpha_minus * w, t - params.alpha_plus * w


def d0_border_entries(params, x, t, w):
    """Border rows ``(y, z)`` and ``(u, v)`` for a kind-0 point.

    Scalars or polynomials; the two rows solve the row-reduced pair of
    linear equations linking ``z, v`` to ``y, u``.
    """
    ap, am = params.alpha_plus, params.alpha_minus
    y, u = d0_to_yu(params, t, w)
    z = (am * am - x) * w + am * y + 0.5
    v = (ap * ap - x) * w + ap * u + 0.5
    return y, z, u, v


def reconstruct_n4(x, y, u, params, tol=None):
    """4x4 bordered pair from ``(x, y, u)``; ``(t, w)`` must lie on the D0 surface."""
    if params.kind != 0:
        raise ValueError("reconstruct_n4 needs kind-0 parameters")
    t, w = d0_coords(params, complex(x), complex(y), complex(u))
    pt = SurfacePoint((t, w, x), params)
    _require_on_surface(pt, tol)
    return _assemble_n4(params, x, t, w)


def _assemble_n4(p, x, t, w):
    ap, am = p.alpha_plus, p.alpha_minus
    y, z, u, v = d0_border_entries(p, x, t, w)
    a, b, c = d1_core_entries(p, x, y, z)
    S = np.array([[0, x, 0, 0], [1, 0, 0, 0], [0, 1, ap, 0], [0, 1, 0, am]], dtype=complex)
    Y = np.array(
        [[a, b, 0, 0], [c, -a, 0, 0], [y, z, am / 2, 0], [u, v, 0, ap / 2]], dtype=complex
    )
    return SlicePoint(S, Y, *family_specs(0, 1, p.mu1, p.mu2))


def reconstruct(pt, tol=None):
    """Dispatch on the surface kind."""
    k = pt.params.kind
    if k == 2:
        return reconstruct_n2(pt, tol)
    if k == 1:
        return reconstruct_n3(pt, tol)
    if pt.params.mu2 == 0:
        raise DegenerateParameter("the D0 reconstruction needs mu2 != 0")
    _require_on_surface(pt, tol)
    t, w, x = pt.coords
    return _assemble_n4(pt.params, x, t, w)


def extract_coords(sp, tol=None):
    """Read surface coordinates off a pair of size 2, 3 or 4."""
    params = SurfaceParams(sp.kind, sp.mu1, sp.mu2) if sp.kind is not None else None
    n = sp.n
    S, Y = sp.S, sp.Y
    tol = get_tol(tol)
    scale = tol * (1.0 + sup(S) + sup(Y))
    if params is None or (params.kind, n) not in {(2, 2), (1, 3), (0, 4)}:
        raise NotCanonical("extract_coords needs an m = 1 slice point")
    if params.kind == 2:
        if abs(S[0, 0]) > scale or abs(S[1, 1]) > scale or abs(S[1, 0] - 1) > scale:
            raise NotCanonical("2x2 S is not [[0, x], [1, 0]]")
        return SurfacePoint((Y[0, 0], Y[1, 0], S[0, 1]), params)
    check_canonical(sp, tol)
    x = S[0, 1]
    if params.kind == 1:
        return SurfacePoint((x, Y[2, 0], Y[2, 1]), params)
    t, w = d0_coords(params, x, Y[2, 0], Y[3, 0])
    return SurfacePoint((t, w, x), params)
