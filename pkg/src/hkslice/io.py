"""JSON documents for points and reports.

Complex scalars are stored as ``[re, im]`` pairs, arrays as nested lists of
such pairs, polynomials as their ascending coefficient lists. A point
document is ``{"type": ..., "data": ...}``.
"""

import json

import numpy as np

from .hilb import HilbPoint
from .poly import Polynomial
from .slices import OrbitSpec, SlicePoint
from .surfaces import SurfaceParams, SurfacePoint

__all__ = [
    "encode_complex",
    "decode_complex",
    "encode_array",
    "decode_array",
    "point_to_document",
    "point_from_document",
    "dumps",
    "load_document",
]


def encode_complex(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(pair):
    re, im = pair
    return complex(float(re), float(im))


def encode_array(a):
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def decode_array(data):
    arr = np.asarray(data, dtype=float)
    if arr.size == 0:
        return np.zeros(0, dtype=complex)
    if arr.shape[-1] != 2:
        raise ValueError("complex arrays are stored as [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _encode_spec(spec):
    return {"mu": encode_complex(spec.mu), "k": spec.k, "l": spec.l}


def _decode_spec(d):
    return OrbitSpec(decode_complex(d["mu"]), int(d["k"]), int(d["l"]))


def _encode_params(p):
    return {"kind": p.kind, "mu1": encode_complex(p.mu1), "mu2": encode_complex(p.mu2)}


def _decode_params(d):
    return SurfaceParams(int(d["kind"]), decode_complex(d["mu1"]), decode_complex(d["mu2"]))


def point_to_document(pt, params=None):
    """Wrap a point as a typed document.

    ``params`` identifies the surface for a :class:`HilbPoint` of one of
    the three surfaces; it is stored alongside the polynomials.
    """
    if isinstance(pt, SlicePoint):
        data = {
            "S": encode_array(pt.S),
            "Y": encode_array(pt.Y),
            "spec1": _encode_spec(pt.spec1),
            "spec2": _encode_spec(pt.spec2),
        }
        return {"type": "SlicePoint", "data": data}
    if isinstance(pt, HilbPoint):
        data = {
            "q": encode_array(pt.q.coeffs),
            "coords": [encode_array(c.coeffs) for c in pt.coords],
        }
        if params is not None:
            data["surface"] = _encode_params(params)
        return {"type": "HilbPoint", "data": data}
    if isinstance(pt, SurfacePoint):
        data = {"surface": _encode_params(pt.params), "coords": encode_array(pt.coords)}
        return {"type": "SurfacePoint", "data": data}
    raise TypeError(f"cannot serialise {type(pt).__name__}")


def point_from_document(doc):
    """Inverse of :func:`point_to_document`; returns ``(point, params)``."""
    kind = doc.get("type")
    data = doc.get("data")
    if data is None:
        raise ValueError("document has no data")
    if kind == "SlicePoint":
        pt = SlicePoint(decode_array(data["S"]), decode_array(data["Y"]),
                        _decode_spec(data["spec1"]), _decode_spec(data["spec2"]))
        return pt, None
    if kind == "HilbPoint":
        q = Polynomial(decode_array(data["q"]))
        coords = tuple(Polynomial(decode_array(c)) for c in data["coords"])
        params = _decode_params(data["surface"]) if "surface" in data else None
        return HilbPoint(q, coords), params
    if kind == "SurfacePoint":
        params = _decode_params(data["surface"])
        return SurfacePoint(tuple(decode_array(data["coords"])), params), params
    raise ValueError(f"unknown document type {kind!r}")


def dumps(obj, pretty=False):
    """Deterministic JSON text (sorted keys, fixed separators)."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
