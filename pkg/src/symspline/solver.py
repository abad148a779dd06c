"""Fixed-point computation of C2 cubic splines on symmetric spaces.

Each knot ``p_i`` carries a velocity ``v_i``; the inner Bezier control
points are ``q_i^+ = E(v_i) . p_i`` and ``q_i^- = E(-v_i) . p_i``, which
makes the curve C1 by construction.  The C2 condition at interior knots
is solved by the Jacobi-type iteration ``v <- v + delta/4`` with

    delta_i = log_{p_i}(E(-v_i) . q_{i+1}^-) - log_{p_i}(E(v_i) . q_{i-1}^+) - 2 v_i

starting from ``v = 0``.  Boundary velocities come from the clamped or
natural end conditions.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
import math
from typing import Sequence

import numpy as np

from .bezier import CompositeCurve, CubicSegment
from .errors import Diverged, InputError, LogUndefined, NotConverged
from .geometry import CURVATURE_SAMPLES, SymmetricSpace

__all__ = [
    "Natural",
    "Clamped",
    "InterpolationProblem",
    "ControlNet",
    "SolveReport",
    "omega",
    "boundary_velocities",
    "sweep",
    "solve",
    "build_control_net",
    "c1_residual",
    "c2_residual",
    "data_diameter",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Natural:
    """Zero covariant acceleration at both ends."""

    kind = "natural"


@dataclass(frozen=True)
class Clamped:
    """Prescribed end velocities.

    ``v_start`` and ``v_end`` are knot velocities (offsets to the first and
    last control points); the curve derivative there is three times that.
    """

    v_start: np.ndarray
    v_end: np.ndarray
    kind = "clamped"


@dataclass
class InterpolationProblem:
    geometry: SymmetricSpace
    points: Sequence[np.ndarray]
    boundary: Natural | Clamped = field(default_factory=Natural)
    tol: float = 1e-10
    max_iter: int = 500

    def __post_init__(self):
        geom = self.geometry
        self.points = [np.asarray(p, dtype=geom.dtype) for p in self.points]
        if len(self.points) < 2:
            raise InputError("need at least two interpolation points")
        for p in self.points:
            geom.check_point(p)
        for i in range(len(self.points) - 1):
            try:
                geom.log(self.points[i], self.points[i + 1])
            except LogUndefined:
                raise InputError(f"points {i} and {i + 1} are at or past the cut locus") from None
        if isinstance(self.boundary, Clamped):
            geom.check_tangent(self.points[0], self.boundary.v_start)
            geom.check_tangent(self.points[-1], self.boundary.v_end)
        if not self.tol > 0 or self.max_iter < 1:
            raise InputError("tol must be positive and max_iter at least 1")

    @property
    def n(self):
        """Number of segments."""
        return len(self.points) - 1


@dataclass(frozen=True)
class ControlNet:
    """Knots, knot velocities and the induced Bezier control points.

    ``q_plus[i]`` belongs to knot ``i`` for ``i < N`` and ``q_minus[i]`` to
    knot ``i + 1``.
    """

    geometry: SymmetricSpace
    points: list
    velocities: list
    q_plus: list
    q_minus: list

    @property
    def n(self):
        return len(self.points) - 1

    def curve(self):
        segs = [
            CubicSegment(self.points[i], self.q_plus[i], self.q_minus[i], self.points[i + 1])
            for i in range(self.n)
        ]
        return CompositeCurve(self.geometry, segs)


@dataclass
class SolveReport:
    iterations: int
    residuals: list
    converged: bool
    contraction_estimate: float
    data_diameter: float
    curvature_bound: float
    curvature_is_estimate: bool
    curvature_samples: int = 0

    @property
    def KD_product(self):
        return self.curvature_bound * self.data_diameter

    def as_dict(self):
        return {
            "iterations": self.iterations,
            "residuals": list(self.residuals),
            "converged": self.converged,
            "contraction_estimate": self.contraction_estimate,
            "data_diameter": self.data_diameter,
            "curvature_bound": self.curvature_bound,
            "curvature_is_estimate": self.curvature_is_estimate,
            "curvature_samples": self.curvature_samples,
            "KD_product": self.KD_product,
        }


def _q_plus(geom, p, v):
    return geom.exp(p, v)


def _q_minus(geom, p, v):
    return geom.exp(p, -v)


def omega(problem: InterpolationProblem, v, i):
    """The two logs entering the C2 condition at interior knot ``i``.

    Returns ``(w_plus, w_minus)``, tangents at ``p_i``; their difference is
    the map ``w_i`` of the iteration.
    """
    geom = problem.geometry
    p = problem.points
    if not 1 <= i <= problem.n - 1:
        raise IndexError(f"knot {i} is not interior")
    q_next = _q_minus(geom, p[i + 1], v[i + 1])
    q_prev = _q_plus(geom, p[i - 1], v[i - 1])
    w_plus = geom.log(p[i], geom.act(geom.movement(p[i], -v[i]), q_next))
    w_minus = geom.log(p[i], geom.act(geom.movement(p[i], v[i]), q_prev))
    return w_plus, w_minus


def boundary_velocities(problem: InterpolationProblem, v):
    """End velocities ``(v_0, v_N)`` determined by the incoming field ``v``."""
    b = problem.boundary
    if isinstance(b, Clamped):
        return np.asarray(b.v_start), np.asarray(b.v_end)
    geom = problem.geometry
    p = problem.points
    n = problem.n
    v0 = 0.5 * geom.log(p[0], _q_minus(geom, p[1], v[1]))
    vn = -0.5 * geom.log(p[n], _q_plus(geom, p[n - 1], v[n - 1]))
    return v0, vn


def _delta(problem, vbar, i):
    w_plus, w_minus = omega(problem, vbar, i)
    return w_plus - w_minus - 2.0 * vbar[i]


def sweep(problem: InterpolationProblem, v, order=None, executor=None):
    """One Jacobi sweep of the iteration.

    Every update is computed from the incoming field only, so ``order`` (a
    permutation of the interior indices) and ``executor`` (anything with a
    ``map`` method) do not change the result.  Returns the new field and
    the max-norm residual.  With a single segment there are no interior
    knots; the residual is then the change of the end velocities.
    """
    geom = problem.geometry
    n = problem.n
    v0, vn = boundary_velocities(problem, v)
    vbar = [v0, *v[1:n], vn]
    interior = list(range(1, n)) if order is None else list(order)
    if sorted(interior) != list(range(1, n)):
        raise ValueError("order must be a permutation of the interior knots")
    mapper = map if executor is None else executor.map
    deltas = dict(zip(interior, mapper(lambda i: _delta(problem, vbar, i), interior)))
    new = list(vbar)
    for i in range(1, n):
        new[i] = vbar[i] + 0.25 * deltas[i]
    if n == 1:
        residual = max(geom.norm(problem.points[0], v0 - v[0]), geom.norm(problem.points[1], vn - v[1]))
    else:
        residual = max(geom.norm(problem.points[i], deltas[i]) for i in range(1, n))
    return new, residual


def _contraction(residuals):
    tail = residuals[-11:]
    ratios = [b / a for a, b in zip(tail, tail[1:]) if a > 0]
    return float(np.median(ratios)) if ratios else 0.0


def data_diameter(problem: InterpolationProblem):
    """Largest distance between consecutive interpolation points."""
    geom = problem.geometry
    p = problem.points
    return max(geom.distance(p[i], p[i + 1]) for i in range(problem.n))


def build_control_net(problem: InterpolationProblem, v, refresh_boundary=True):
    """Control net for the velocity field ``v``.

    With ``refresh_boundary`` the end velocities are recomputed from the
    interior ones, so the boundary conditions hold for the returned net.
    """
    geom = problem.geometry
    p = problem.points
    n = problem.n
    v = list(v)
    if refresh_boundary and n > 1:
        v[0], v[n] = boundary_velocities(problem, v)
    q_plus = [_q_plus(geom, p[i], v[i]) for i in range(n)]
    q_minus = [_q_minus(geom, p[i + 1], v[i + 1]) for i in range(n)]
    return ControlNet(geom, list(p), v, q_plus, q_minus)


def solve(problem: InterpolationProblem, workers=None, raise_on_failure=True):
    """Run the iteration from ``v = 0`` until the residual drops below ``tol``.

    Returns ``(ControlNet, SolveReport)``.  Raises :class:`NotConverged`
    after ``max_iter`` sweeps and :class:`Diverged` when an iterate leaves
    the domain of the logarithm, unless ``raise_on_failure`` is false (the
    net of the last iterate is returned instead).  ``workers > 1`` spreads
    the per-knot updates of each sweep over a thread pool.
    """
    geom = problem.geometry
    v = [geom.zero_tangent(p) for p in problem.points]
    residuals = []
    executor = ThreadPoolExecutor(workers) if workers and workers > 1 else None
    try:
        for k in range(problem.max_iter):
            try:
                v, res = sweep(problem, v, executor=executor)
            except LogUndefined as exc:
                if raise_on_failure:
                    raise Diverged(k, exc) from exc
                break
            residuals.append(res)
            if not math.isfinite(res):
                raise Diverged(k, "non-finite residual")
            if res <= problem.tol:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    converged = bool(residuals) and residuals[-1] <= problem.tol
    report = SolveReport(
        iterations=len(residuals),
        residuals=residuals,
        converged=converged,
        contraction_estimate=_contraction(residuals),
        data_diameter=data_diameter(problem),
        curvature_bound=geom.curvature_bound(),
        curvature_is_estimate=not geom.curvature_is_exact,
        curvature_samples=0 if geom.curvature_is_exact else CURVATURE_SAMPLES,
    )
    log.debug("solve finished: %d sweeps, residual %.3e", report.iterations, residuals[-1] if residuals else math.nan)
    if not converged and raise_on_failure:
        raise NotConverged(report)
    return build_control_net(problem, v), report


def c1_residual(net: ControlNet):
    """Per interior knot, ``|log(p_i, q_i^+) + log(p_i, q_i^-)|``."""
    geom = net.geometry
    out = []
    for i in range(1, net.n):
        p = net.points[i]
        out.append(geom.norm(p, geom.log(p, net.q_plus[i]) + geom.log(p, net.q_minus[i - 1])))
    return out


def c2_residual(net: ControlNet):
    """Per interior knot, the norm of the defect in the C2 condition."""
    geom = net.geometry
    out = []
    for i in range(1, net.n):
        p, v = net.points[i], net.velocities[i]
        ahead = geom.log(p, geom.act(geom.movement(p, -v), net.q_minus[i]))
        behind = geom.log(p, geom.act(geom.movement(p, v), net.q_plus[i - 1]))
        defect = ahead - geom.log(p, net.q_plus[i]) - behind + geom.log(p, net.q_minus[i - 1])
        out.append(geom.norm(p, defect))
    return out
