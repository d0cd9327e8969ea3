"""End-to-end acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line with the worst residual seen,
then asserts. Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from hkslice import hilb, nahm, slices, surfaces, twistor
from hkslice.hilb import HilbPoint
from hkslice.linalg import sup
from hkslice.poly import Polynomial, poly_mod
from hkslice.slices import OrbitSpec

from support import disk, random_hilb_point, random_params, random_slice_point

KINDS = (0, 1, 2)
SHAPES = {2: (0, 0), 1: (1, 0), 0: (1, 1)}


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number}: {title}  [{detail}]")
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def test_1_surface_to_slice(verdict):
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for kind in KINDS:
        for _ in range(100):
            pt = surfaces.sample_surface_point(random_params(kind, rng), rng)
            sp = surfaces.reconstruct(pt)
            A, B = sp.S / 2 + sp.Y, sp.S / 2 - sp.Y
            eye = np.eye(sp.n)
            worst = max(worst, slices.slice_residual(sp),
                        sup(A @ A - sp.mu1**2 * eye), sup(B @ B - sp.mu2**2 * eye))
    elapsed = time.perf_counter() - t0
    verdict(1, "surface -> slice pairs, kinds 0/1/2 x 100", worst <= 1e-8 and elapsed < 5,
            f"max residual {worst:.2e} <= 1e-8, {elapsed:.2f}s < 5s")


def test_2_characteristic_shape(verdict):
    rng = np.random.default_rng(202)
    leak, wrong = 0.0, 0
    for kind in KINDS:
        for _ in range(100):
            shape = slices.char_shape(random_slice_point(kind, rng), tol=1e-7)
            wrong += (shape.p, shape.q) != SHAPES[kind]
            leak = max(leak, shape.odd_leakage)
    verdict(2, "char poly shape (p,q) and even factor", wrong == 0 and leak <= 1e-7,
            f"{wrong} wrong shapes, odd leakage {leak:.2e} <= 1e-7")


def _orbit_specs(n, mu):
    """Orbits of size n for every signed d = k - l."""
    return [OrbitSpec(mu, k, n - k) for k in range(n + 1)]


def test_3_emptiness(verdict):
    rng = np.random.default_rng(303)
    cases = violations = 0
    for n in range(1, 9):
        for s1 in _orbit_specs(n, 1.0 + 0.3j):
            for s2 in _orbit_specs(n, -0.4 + 0.7j):
                if abs(s1.d) + abs(s2.d) <= 2:
                    continue
                cases += 1
                assert slices.is_empty(s1, s2)
                ranks = slices.rank_obstruction(s1, s2, rng, samples=100)
                violations += sum(r >= n - 1 for r in ranks)
    verdict(3, "rank obstruction for |d1|+|d2|>2, n<=8", violations == 0,
            f"{cases} orbit pairs x 100 samples, {violations} counterexamples")


def _nakajima_iff(rng, samples=100):
    """Agreement between the two displayed equations and B1 B2 = S."""
    disagreements = 0
    worst_good = 0.0
    for i in range(samples):
        x0, x1, q0, q1 = (complex(rng.normal(), rng.normal()) for _ in range(4))
        M = np.array([[x0, x1 * q0], [x1, x0 + x1 * q1]])
        y0, y1 = np.linalg.solve(M, [0, 1])
        if i % 2:
            y1 += 0.1 * complex(rng.normal(), rng.normal())
        e = max(map(abs, hilb.two_point_equations(x0, x1, y0, y1, q0, q1)))
        hp = HilbPoint(Polynomial([-q0, -q1, 1]), (Polynomial([x0, x1]), Polynomial([y0, y1])))
        prod = hilb.nakajima_triple(hp).product_residual()
        disagreements += (e <= 1e-10) != (prod <= 1e-10)
        if i % 2 == 0:
            worst_good = max(worst_good, prod)
    return disagreements, worst_good


def test_4_transverse_hilbert_scheme(verdict):
    rng = np.random.default_rng(404)
    dist = pols = 0.0
    for kind in KINDS:
        for m in range(1, 6):
            for method in ("vandermonde", "direct"):
                for _ in range(10):
                    params = random_params(kind, rng)
                    model, arr, pt = random_hilb_point(params, m, rng, min_sep=0.1)
                    sp = hilb.hilb_to_slice(kind, pt, params, method)
                    back = hilb.slice_to_hilb(sp, method)
                    dist = max(dist, hilb.multiset_distance(hilb.scatter(model, back), arr))
                    pols = max(pols, hilb.pols_residual(kind, back, params))
    bad, good = _nakajima_iff(rng)
    ok = dist <= 1e-6 and pols <= 1e-8 and bad == 0 and good <= 1e-10
    verdict(4, "gather -> slice -> Hilbert -> scatter, m<=5", ok,
            f"point error {dist:.2e} <= 1e-6, core congruence {pols:.2e} <= 1e-8, "
            f"n=2 iff: {bad} disagreements, B1B2-S {good:.2e} <= 1e-10")


def test_5_rational_maps(verdict):
    rng = np.random.default_rng(505)
    model = hilb.double_cover_model(0.0)
    worst, mismatched = 0.0, 0
    for m in range(1, 6):
        for _ in range(100):
            pts = []
            while len(pts) < m:
                y, z = disk(rng), disk(rng)
                if all(abs(z - p[2]) >= 0.1 for p in pts):
                    pts.append((np.sqrt(1 + z * y * y) * rng.choice([-1, 1]), y, z))
            pt = hilb.gather(model, pts)
            p, Q = hilb.rational_map_from_D1(pt, tol=1e-8)
            worst = max(worst, poly_mod(p * p.reflect() - 1, Q).norm())
            back = hilb.d1_from_rational_map(p, Q)
            same = np.array_equal(back.q.coeffs, pt.q.coeffs) and all(
                np.array_equal(a.padded(m), b.padded(m)) for a, b in zip(back.coords, pt.coords))
            mismatched += not same
    verdict(5, "p(u)p(-u) = 1 mod q(u^2), m<=5 x 100", worst <= 1e-8 and mismatched == 0,
            f"congruence {worst:.2e} <= 1e-8, {mismatched} inexact inversions")


def _zeta(rng):
    return rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())


def _rel(r, *terms):
    return abs(r) / (1 + sum(abs(t) for t in terms) ** 2)


def test_6_twistor(verdict):
    rng = np.random.default_rng(606)
    coc = transport = product = 0.0
    for kind in KINDS:
        params = surfaces.SurfaceParams(kind, 0.6 + 0.2j, 0.3 - 0.1j)
        for _ in range(20):
            sp = surfaces.reconstruct(surfaces.sample_surface_point(params, rng))
            g = np.eye(sp.n) + 0.3 * (rng.normal(size=(sp.n, sp.n)) + 1j * rng.normal(size=(sp.n, sp.n)))
            for _ in range(10):
                zeta = _zeta(rng)
                coc = max(coc, twistor.cocycle_residual_N(zeta, sp.S, g),
                          twistor.cocycle_residual_SY(zeta, sp.S, sp.Y))
                transport = max(transport, slices.slice_residual(twistor.transport_slice(zeta, sp)))
    # product identities on D_{1,1}(mu/2, mu/2) and its quotient D0
    for _ in range(200):
        mu = 0.5 * complex(rng.normal(), rng.normal())
        x, y, z = surfaces.sample_surface_point(surfaces.SurfaceParams(1, mu / 2, mu / 2), rng).coords
        zeta, lam = _zeta(rng), np.sqrt(x)
        yt, zt = twistor.d1_chart_transition(zeta, lam, y, z)
        lt = lam / zeta**2
        product = max(product, _rel((zt + lt * yt) * (zt - lt * yt) - 0.25, zt, lt * yt))
        t, w = 4 * yt * zt, -4 * yt * yt
        d0 = (lt * lt * w - 0.5 + t * lt) * (lt * lt * w - 0.5 - t * lt) - 0.25
        product = max(product, _rel(d0, lt * lt * w, 0.5, t * lt))
    ok = coc <= 1e-7 and transport <= 1e-7 and product <= 1e-9
    verdict(6, "chart transitions on 0.5<=|zeta|<=2", ok,
            f"cocycle {coc:.2e}, transport {transport:.2e} <= 1e-7; products {product:.2e} <= 1e-9")


def test_7_nahm(verdict):
    rng = np.random.default_rng(707)
    zetas = 0.8 * np.exp(2j * np.pi * np.arange(5) / 5) + 0.1
    pole = drift = slowest = 0.0
    for n in range(1, 5):
        poles = nahm.regular_triple(n)
        t0 = time.perf_counter()
        traj = nahm.integrate(nahm.pole_state(poles, 0.01), 1.0)
        pole = max(pole, nahm.pole_error(traj, poles))
        drift = max(drift, nahm.spectral_drift(traj, zetas, pole_scaled=True))
        slowest = max(slowest, time.perf_counter() - t0)
        t0 = time.perf_counter()
        traj = nahm.integrate(nahm.bounded_state(n, rng, t=0.1, gauge=True), 1.0)
        drift = max(drift, nahm.spectral_drift(traj, zetas))
        slowest = max(slowest, time.perf_counter() - t0)
    ok = pole <= 1e-6 and drift <= 1e-6 and slowest < 10
    verdict(7, "Nahm pole tracking and isospectrality, n<=4", ok,
            f"pole error {pole:.2e}, drift {drift:.2e} <= 1e-6, slowest run {slowest:.2f}s < 10s")


CLI_RUNS = [
    ["verify-surface", "--kind", "1", "--trials", "20"],
    ["hilb-roundtrip", "--kind", "0", "--m", "3", "--trials", "5"],
    ["empty", "--n", "5", "--d1", "3", "--d2", "1", "--trials", "20"],
    ["twistor", "--kind", "2", "--samples", "3", "--trials", "5"],
    ["nahm", "--n", "3", "--mode", "bounded"],
    ["sample", "--kind", "1", "--m", "3", "--what", "slice"],
]


def test_8_cli_determinism(verdict, tmp_path):
    differing = []
    for argv in CLI_RUNS:
        outs = [subprocess.run([sys.executable, "-m", "hkslice.cli", *argv, "--seed", "11"],
                               capture_output=True, check=False).stdout for _ in range(2)]
        if outs[0] != outs[1] or not outs[0]:
            differing.append(argv[0])
    # the verify command on a sampled document
    doc = tmp_path / "pt.json"
    doc.write_bytes(subprocess.run([sys.executable, "-m", "hkslice.cli", *CLI_RUNS[-1], "--seed", "11"],
                                   capture_output=True, check=True).stdout)
    outs = [subprocess.run([sys.executable, "-m", "hkslice.cli", "verify", "--input", str(doc)],
                           capture_output=True, check=False).stdout for _ in range(2)]
    if outs[0] != outs[1] or not json.loads(outs[0])["pass"]:
        differing.append("verify")
    verdict(8, "byte-identical CLI reports for a fixed seed", not differing,
            f"{len(CLI_RUNS) + 1} commands, differing: {differing or 'none'}")
