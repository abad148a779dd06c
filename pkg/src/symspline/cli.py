"""Command-line front end.

Exit codes: 0 converged, 1 input error, 2 no convergence, 3 divergence.
"""
from __future__ import annotations

import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
import io
import json
import logging
import os
import sys

import numpy as np

from . import demos
from .bezier import decasteljau
from .errors import Diverged, GeometryError, InputError, NotConverged
from .oracle import euclidean_spline_velocities
from .problem_file import (
    control_net_to_json,
    encode_array,
    geometry_to_json,
    load_problem,
)
from .projections import frames_from_quaternions, project_bloch, project_stereographic
from .solver import solve

__all__ = ["main", "run_solve", "run_demo", "build_output", "sample_curve"]

EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_DIVERGED = 0, 1, 2, 3

PROJECTIONS = {
    "stereographic": project_stereographic,
    "bloch": project_bloch,
    "frames": frames_from_quaternions,
}
DEMOS = {
    "affine-shapes": "stereographic",
    "bloch": "bloch",
    "quaternions": "frames",
}

log = logging.getLogger("symspline")


def _threads():
    try:
        return max(1, int(os.environ.get("SYMSPLINE_THREADS", "1")))
    except ValueError:
        return 1


def sample_curve(curve, per_segment=64, threads=1):
    """Evaluate ``curve`` on a uniform grid; returns ``(t, points, segment)``."""
    ts = np.linspace(0.0, curve.n_segments, curve.n_segments * per_segment + 1)
    located = [curve.locate(t) for t in ts]

    def evaluate(item):
        i, s = item
        return decasteljau(curve.geometry, curve.segments[i], s)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            points = list(pool.map(evaluate, located))
    else:
        points = [evaluate(item) for item in located]
    return ts, points, [i for i, _ in located]


def build_output(problem, net, report, samples=64, project=None, oracle=False):
    """Result document for a solved problem."""
    geom = problem.geometry
    ts, pts, segs = sample_curve(net.curve(), samples, _threads())
    doc = {
        "geometry": geometry_to_json(geom),
        "control_net": control_net_to_json(net),
        "report": report.as_dict(),
        "samples": [
            {"t": float(t), "segment_index": int(i), "coords": encode_array(x)}
            for t, x, i in zip(ts, pts, segs)
        ],
    }
    if project:
        values = PROJECTIONS[project](geom, pts)
        doc["projection"] = {"kind": project, "values": values.tolist()}
    if oracle:
        if geom.name != "flat":
            raise InputError("--oracle is only available for flat problems")
        ref = euclidean_spline_velocities(np.array(problem.points), problem.boundary)
        dev = float(np.max(np.abs(ref - np.array(net.velocities))))
        doc["oracle"] = {"velocities": ref.tolist(), "max_deviation": dev}
    return doc


def _csv_text(doc):
    samples = doc["samples"]
    proj = doc.get("projection", {}).get("values")
    n_coords = np.asarray(samples[0]["coords"]).size
    n_proj = np.asarray(proj[0]).size if proj else 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "segment_index", *(f"x{j}" for j in range(n_coords)), *(f"proj{j}" for j in range(n_proj))])
    for k, s in enumerate(samples):
        values = np.asarray(s["coords"], dtype=float).ravel().tolist()
        if proj:
            values += np.asarray(proj[k], dtype=float).ravel().tolist()
        writer.writerow([repr(s["t"]), s["segment_index"], *map(repr, values)])
    return buf.getvalue()


def _emit(doc, output, fmt):
    text = _csv_text(doc) if fmt == "csv" else json.dumps(doc, indent=1) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(problem, args):
    try:
        net, report = solve(problem)
        doc = build_output(
            problem, net, report,
            samples=args.samples, project=args.project, oracle=args.oracle,
        )
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except Diverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (InputError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args.output, args.format)
    log.info(
        "converged in %d sweeps (contraction %.3f, KD %.3f)",
        report.iterations, report.contraction_estimate, report.KD_product,
    )
    return EXIT_OK


def run_solve(input_path, args):
    try:
        problem = load_problem(input_path, tol=args.tol, max_iter=args.max_iter)
    except (InputError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return _run(problem, args)


def run_demo(name, args):
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.max_iter is not None:
        overrides["max_iter"] = args.max_iter
    rng = np.random.default_rng(args.seed)
    try:
        if name == "affine-shapes":
            problem = demos.affine_shape_problem(**overrides)
        elif name == "bloch":
            problem = demos.bloch_problem(rng, **overrides)
        else:
            problem = demos.quaternion_problem(rng, **overrides)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.project is None:
        args.project = DEMOS[name]
    return _run(problem, args)


def _parser():
    ap = argparse.ArgumentParser(
        prog="symspline",
        description="C2 cubic spline interpolation on symmetric spaces.",
    )
    ap.add_argument("input", nargs="?", help="JSON problem file")
    ap.add_argument("--demo", choices=sorted(DEMOS), help="run a built-in demo instead of a file")
    ap.add_argument("--samples", type=int, default=64, help="sample intervals per segment (default 64)")
    ap.add_argument("--tol", type=float, default=None, help="residual tolerance")
    ap.add_argument("--max-iter", type=int, default=None, help="maximum number of sweeps")
    ap.add_argument("--output", "-o", help="output path (default: stdout)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--project", choices=sorted(PROJECTIONS), help="append a projection of the samples")
    ap.add_argument("--oracle", action="store_true", help="compare with the Euclidean spline (flat only)")
    ap.add_argument("--seed", type=int, default=0, help="seed for the random demos")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.demo:
        return run_demo(args.demo, args)
    if not args.input:
        print("error: give a problem file or --demo", file=sys.stderr)
        return EXIT_INPUT
    return run_solve(args.input, args)


if __name__ == "__main__":
    sys.exit(main())
