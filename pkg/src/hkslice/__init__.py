"""Explicit matrix and polynomial models of regular slices to sums of two
adjoint orbits, the ALF surfaces they produce, transverse Hilbert schemes
of points, twistor gluing data and Nahm's equations."""

from .config import TOLERANCES, tolerances
from .errors import HKSliceError
from .hilb import HilbPoint, hilb_to_slice, slice_to_hilb
from .poly import Polynomial
from .slices import OrbitSpec, SlicePoint, family_specs
from .surfaces import SurfaceParams, SurfacePoint

__version__ = "0.1.0"

__all__ = [
    "TOLERANCES",
    "tolerances",
    "HKSliceError",
    "Polynomial",
    "OrbitSpec",
    "SlicePoint",
    "family_specs",
    "SurfaceParams",
    "SurfacePoint",
    "HilbPoint",
    "hilb_to_slice",
    "slice_to_hilb",
]
