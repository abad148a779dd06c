"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line with the measured numbers; the
lines are printed in the pytest terminal summary (see ``conftest.py``) and
also when this file is run directly with ``python tests/test_acceptance.py``.
"""
import json
import time

import numpy as np
import pytest

from symspline import (
    Flat,
    Grassmannian,
    InterpolationProblem,
    Projective,
    Sphere,
    curve_eval,
    numeric_derivative,
    solve,
)
from symspline.cli import main
from symspline.oracle import euclidean_spline_velocities
from symspline.projections import frames_from_quaternions

import lemmas
from conftest import random_walk

RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    assert ok, RESULTS[number]


def knot_error(net):
    curve = net.curve()
    return max(net.geometry.distance(curve_eval(curve, float(i)), p) for i, p in enumerate(net.points))


def test_criterion_1_flat_oracle():
    rng = np.random.default_rng(1)
    worst, most_sweeps = 0.0, 0
    start = time.perf_counter()
    for _ in range(50):
        n = int(rng.integers(2, 21))
        pts = rng.standard_normal((n + 1, 3))
        net, report = solve(InterpolationProblem(Flat(3), list(pts)))
        ref = euclidean_spline_velocities(pts)
        worst = max(worst, float(np.max(np.abs(np.array(net.velocities) - ref))))
        most_sweeps = max(most_sweeps, report.iterations)
    elapsed = time.perf_counter() - start
    record(
        1, "flat oracle", worst <= 1e-9 and most_sweeps <= 300 and elapsed < 5.0,
        f"max deviation {worst:.2e} (limit 1e-9), max sweeps {most_sweeps} (limit 300), {elapsed:.2f} s (limit 5 s)",
    )


def test_criterion_2_knot_continuity():
    rng = np.random.default_rng(2)
    h = 1e-4
    worst1, worst2 = 0.0, 0.0
    for geom in (Sphere(2), Grassmannian(2, 4), Projective(2)):
        for _ in range(3):
            net, _ = solve(InterpolationProblem(geom, random_walk(geom, rng, 6, 0.3)))
            curve = net.curve()
            for i in range(1, net.n):
                p = net.points[i]
                d1 = numeric_derivative(curve, i, 1, h, "left") - numeric_derivative(curve, i, 1, h, "right")
                d2 = numeric_derivative(curve, i, 2, h, "left") - numeric_derivative(curve, i, 2, h, "right")
                worst1 = max(worst1, geom.norm(p, d1))
                worst2 = max(worst2, geom.norm(p, d2))
    record(
        2, "C1/C2 at knots", worst1 <= 1e-7 and worst2 <= 1e-5,
        f"C1 jump {worst1:.2e} (limit 1e-7), C2 jump {worst2:.2e} (limit 1e-5)",
    )


def test_criterion_3_linear_convergence():
    rng = np.random.default_rng(3)
    geom = Sphere(2)
    rates, sweeps, diameters = [], [], []
    for count in (4, 6, 8, 12, 20):
        net, report = solve(InterpolationProblem(geom, random_walk(geom, rng, count, 0.3)))
        rates.append(report.contraction_estimate)
        sweeps.append(report.iterations)
        diameters.append(report.data_diameter)
        assert report.residuals[-1] < 1e-10
    ok = all(0.3 <= r <= 0.8 for r in rates) and max(sweeps) <= 120 and max(diameters) <= 0.3 + 1e-12
    record(
        3, "linear convergence", ok,
        f"contraction {min(rates):.3f}..{max(rates):.3f} (range [0.3, 0.8]), max sweeps {max(sweeps)} (limit 120)",
    )


def test_criterion_4_geometry_kernels():
    rng = np.random.default_rng(4)
    errors = {"roundtrip": 0.0, "isometry": 0.0, "equivariance": 0.0, "movement": 0.0}
    timings = []
    for geom in (Flat(3), Sphere(2), Grassmannian(2, 4), Projective(2)):
        geom.curvature_bound()  # keep the cached sampler out of the timing
        limit = lemmas.max_norm_for(geom)
        start = time.perf_counter()
        for _ in range(200):
            errors["roundtrip"] = max(errors["roundtrip"], lemmas.roundtrip_error(geom, rng, limit))
            errors["isometry"] = max(errors["isometry"], lemmas.isometry_error(geom, rng))
            errors["equivariance"] = max(errors["equivariance"], lemmas.equivariance_error(geom, rng))
            errors["movement"] = max(errors["movement"], lemmas.movement_error(geom, rng, limit))
        timings.append(time.perf_counter() - start)
    ok = (
        errors["roundtrip"] <= 1e-9 and errors["isometry"] <= 1e-9
        and errors["equivariance"] <= 1e-9 and errors["movement"] <= 1e-10 and max(timings) < 2.0
    )
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errors.items())
    record(4, "geometry kernels", ok, f"{detail}, slowest geometry {max(timings):.2f} s (limit 2 s)")


def test_criterion_5_lemma_checks():
    rng = np.random.default_rng(5)
    worst_sym, worst_dexp = 0.0, 0.0
    for geom in (Sphere(2), Grassmannian(2, 4)):
        for _ in range(20):
            worst_sym = max(worst_sym, lemmas.symmetry_derivative_error(geom, rng))
            worst_dexp = max(worst_dexp, lemmas.dexp_structure_error(geom, rng))
    record(
        5, "symmetry derivative and dexp structure", worst_sym <= 1e-5 and worst_dexp <= 1e-5,
        f"symmetry {worst_sym:.1e}, dexp {worst_dexp:.1e} (limit 1e-5)",
    )


def _demo(tmp_path, capsys, name, *extra):
    out = tmp_path / f"{name}.json"
    code = main(["--demo", name, "-o", str(out), *extra])
    capsys.readouterr()
    return code, (json.loads(out.read_text()) if code == 0 else None)


def test_criterion_6_demos(tmp_path, capsys):
    codes = {}
    code, bloch = _demo(tmp_path, capsys, "bloch")
    codes["bloch"] = code
    vectors = np.array(bloch["projection"]["values"])
    bloch_err = float(np.max(np.abs(np.linalg.norm(vectors, axis=1) - 1)))

    code, shapes = _demo(tmp_path, capsys, "affine-shapes")
    codes["affine-shapes"] = code
    planar = np.array(shapes["projection"]["values"])
    finite = bool(np.all(np.isfinite(planar)))

    code, quats = _demo(tmp_path, capsys, "quaternions")
    codes["quaternions"] = code
    frames = np.array(quats["projection"]["values"])
    ortho_err = float(max(np.max(np.abs(f @ f.T - np.eye(3))) for f in frames))
    samples = [np.array(s["coords"]) for s in quats["samples"]]
    flip_err = float(np.max(np.abs(frames_from_quaternions(Sphere(3), [-q for q in samples]) - frames)))

    ok = all(c == 0 for c in codes.values()) and bloch_err <= 1e-10 and finite and ortho_err <= 1e-10 and flip_err <= 1e-10
    record(
        6, "demo pipelines", ok,
        f"exit codes {codes}, Bloch norm error {bloch_err:.1e}, stereographic finite={finite} "
        f"(max radius {np.max(np.linalg.norm(planar, axis=1)):.3f}), frame error {ortho_err:.1e}, q->-q change {flip_err:.1e}",
    )


def test_criterion_7_interpolation():
    rng = np.random.default_rng(7)
    worst, solves = 0.0, 0
    for geom in (Flat(3), Sphere(2), Sphere(3), Grassmannian(2, 4), Grassmannian(2, 3), Projective(1), Projective(2)):
        for count in (2, 3, 7):
            net, report = solve(InterpolationProblem(geom, random_walk(geom, rng, count, 0.4)))
            assert report.converged
            worst = max(worst, knot_error(net))
            solves += 1
    record(7, "interpolation exactness", worst <= 1e-12, f"max knot distance {worst:.1e} over {solves} solves (limit 1e-12)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
