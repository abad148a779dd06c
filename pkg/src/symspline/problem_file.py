"""JSON problem and result files.

Problem file::

    {
      "geometry": {"name": "sphere", "params": {"n": 2}},
      "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      "boundary": {"type": "natural"},
      "solver": {"tol": 1e-10, "max_iter": 500}
    }

``boundary`` may instead be ``{"type": "clamped", "v_start": ..., "v_end":
...}``.  Complex entries (projective geometry) are ``[re, im]`` pairs, and
Grassmannian points are ``n x k`` nested lists (rows of the frame).
Floats are written with Python's shortest round-trip representation, so
reading a result file back reproduces every value bit for bit.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import GeometryError, InputError
from .geometry import SymmetricSpace, make_geometry
from .solver import Clamped, ControlNet, InterpolationProblem, Natural

__all__ = [
    "INPUT_SLACK",
    "encode_array",
    "decode_array",
    "geometry_to_json",
    "geometry_from_json",
    "parse_problem",
    "load_problem",
    "control_net_to_json",
    "control_net_from_json",
]

# raw input may violate the point invariants by this much before normalisation
INPUT_SLACK = 1e-6


def encode_array(x):
    """Nested lists of floats; complex entries become ``[re, im]``."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        return np.stack([x.real, x.imag], axis=-1).tolist()
    return x.astype(float).tolist()


def decode_array(data, geometry: SymmetricSpace):
    try:
        x = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"expected a numeric array: {exc}") from None
    if geometry.dtype is complex:
        if x.ndim == 0 or x.shape[-1] != 2:
            raise InputError("complex entries must be [re, im] pairs")
        x = x[..., 0] + 1j * x[..., 1]
    if x.shape != geometry.point_shape:
        raise InputError(f"array of shape {x.shape} does not fit {geometry!r} (expected {geometry.point_shape})")
    return x


def geometry_to_json(geometry: SymmetricSpace):
    return {"name": geometry.name, "params": geometry.params}


def geometry_from_json(doc):
    if not isinstance(doc, dict) or "name" not in doc:
        raise InputError("'geometry' must be an object with a 'name'")
    try:
        return make_geometry(doc["name"], **doc.get("params", {}))
    except GeometryError as exc:
        raise InputError(str(exc)) from None


def _point(raw, geometry):
    x = decode_array(raw, geometry)
    try:
        p = geometry.normalize(x)
        geometry.check_point(x, tol=INPUT_SLACK)
    except GeometryError as exc:
        raise InputError(f"invalid point: {exc}") from None
    return p


def _tangent(raw, p, geometry):
    x = decode_array(raw, geometry)
    try:
        geometry.check_tangent(p, x, tol=INPUT_SLACK)
    except GeometryError as exc:
        raise InputError(f"invalid boundary velocity: {exc}") from None
    return geometry.project_tangent(p, x)


def parse_problem(doc, tol=None, max_iter=None) -> InterpolationProblem:
    """Build a validated problem from a decoded JSON document.

    ``tol`` and ``max_iter`` override the file's solver section.
    """
    if not isinstance(doc, dict):
        raise InputError("problem file must contain a JSON object")
    geometry = geometry_from_json(doc.get("geometry"))
    raw_points = doc.get("points")
    if not isinstance(raw_points, list) or len(raw_points) < 2:
        raise InputError("'points' must be a list of at least two points")
    points = [_point(r, geometry) for r in raw_points]

    bdoc = doc.get("boundary", {"type": "natural"})
    kind = bdoc.get("type") if isinstance(bdoc, dict) else None
    if kind == "natural":
        boundary = Natural()
    elif kind == "clamped":
        try:
            boundary = Clamped(
                _tangent(bdoc["v_start"], points[0], geometry),
                _tangent(bdoc["v_end"], points[-1], geometry),
            )
        except KeyError as exc:
            raise InputError(f"clamped boundary needs {exc}") from None
    else:
        raise InputError("boundary type must be 'natural' or 'clamped'")

    sdoc = doc.get("solver", {}) or {}
    try:
        tol = float(tol if tol is not None else sdoc.get("tol", 1e-10))
        max_iter = int(max_iter if max_iter is not None else sdoc.get("max_iter", 500))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad solver settings: {exc}") from None
    return InterpolationProblem(geometry, points, boundary, tol=tol, max_iter=max_iter)


def load_problem(path, **overrides) -> InterpolationProblem:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_problem(doc, **overrides)


def control_net_to_json(net: ControlNet):
    return {
        "points": [encode_array(p) for p in net.points],
        "velocities": [encode_array(v) for v in net.velocities],
        "q_plus": [encode_array(q) for q in net.q_plus],
        "q_minus": [encode_array(q) for q in net.q_minus],
    }


def control_net_from_json(doc, geometry: SymmetricSpace) -> ControlNet:
    """Rebuild a net exactly as written (no re-normalisation)."""
    try:
        fields = {k: [decode_array(x, geometry) for x in doc[k]] for k in ("points", "velocities", "q_plus", "q_minus")}
    except KeyError as exc:
        raise InputError(f"control net is missing {exc}") from None
    return ControlNet(geometry, **fields)
