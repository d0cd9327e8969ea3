"""Random generators shared by the test modules."""

import numpy as np

from hkslice import hilb, slices, surfaces


def disk(rng, radius=1.0):
    return radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


def random_mu(rng, low=0.2, high=1.5):
    """Non-zero complex eigenvalue with modulus in [low, high]."""
    return rng.uniform(low, high) * np.exp(2j * np.pi * rng.uniform())


def random_params(kind, rng):
    mu1, mu2 = random_mu(rng), random_mu(rng)
    while abs(mu1 - mu2) < 0.1 or abs(mu1 + mu2) < 0.1:
        mu2 = random_mu(rng)
    return surfaces.SurfaceParams(kind, mu1, mu2)


def random_hilb_point(params, m, rng, min_sep=0.05):
    out = []
    while len(out) < m:
        pt = surfaces.sample_surface_point(params, rng)
        if all(abs(pt.x - p.x) >= min_sep for p in out):
            out.append(pt)
    model = hilb.surface_model(params)
    arr = np.array([[p[nm] for nm in model.names] for p in out])
    return model, arr, hilb.gather(model, arr)


def random_conjugator(n, rng, max_cond=20.0):
    while True:
        G = np.eye(n) + 0.3 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        if np.linalg.cond(G) <= max_cond:
            return G


def random_slice_point(kind, rng, m=None, conjugate=True):
    """A slice point of ``D_{kind,m}`` in a random basis."""
    m = int(rng.integers(1, 4)) if m is None else m
    params = random_params(kind, rng)
    _, _, hp = random_hilb_point(params, m, rng)
    sp = hilb.hilb_to_slice(kind, hp, params, "direct")
    if kind != 2:
        sp = slices.to_companion(sp)
    if conjugate:
        G = random_conjugator(sp.n, rng)
        Gi = np.linalg.inv(G)
        sp = slices.SlicePoint(G @ sp.S @ Gi, G @ sp.Y @ Gi, sp.spec1, sp.spec2)
    return sp
