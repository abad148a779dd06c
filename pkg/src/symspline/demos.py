"""Built-in demo problems: rotations, qubit states and affine shapes."""
from __future__ import annotations

import numpy as np

from .errors import InputError
from .geometry import Grassmannian, Projective, Sphere
from .solver import InterpolationProblem

__all__ = [
    "AFFINE_SHAPES",
    "AFFINE_LOOP",
    "shape_matrix",
    "shape_to_grassmannian",
    "affine_shape_problem",
    "bloch_problem",
    "quaternion_problem",
]

# Four labelled points p0..p3 placed on the sites (0,1), (-1,0), (0,0), (1,0)
# in different orders.
AFFINE_SHAPES = {
    "A": [(0.0, 1.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
    "B": [(-1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)],
    "C": [(-1.0, 0.0), (0.0, 0.0), (0.0, 1.0), (1.0, 0.0)],
    "D": [(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)],
}
# closed loop, first shape repeated at the end
AFFINE_LOOP = ("A", "B", "C", "D", "A")


def shape_matrix(shape):
    """``2 x 3`` matrix with columns ``p1 - p0``, ``p2 - p0``, ``p3 - p0``."""
    p = np.asarray(shape, dtype=float)
    if p.shape != (4, 2):
        raise InputError("an affine shape here is four points in the plane")
    return (p[1:] - p[0]).T


def shape_to_grassmannian(shape):
    """Gr(2, 3) frame for a full-rank planar 4-point shape.

    The frame spans the row space of :func:`shape_matrix`; its normal is the
    kernel of that matrix.
    """
    a = shape_matrix(shape)
    if np.linalg.matrix_rank(a, tol=1e-10) < 2:
        raise InputError("full rank assumption violated: the four points are collinear")
    return Grassmannian(2, 3).normalize(a.T)


def affine_shape_problem(loop=AFFINE_LOOP, shapes=None, **kw):
    shapes = AFFINE_SHAPES if shapes is None else shapes
    points = [shape_to_grassmannian(shapes[name]) for name in loop]
    return InterpolationProblem(Grassmannian(2, 3), points, **kw)


def bloch_problem(rng, count=6, max_step=1.0, **kw):
    """Random qubit states, each within ``max_step`` (Fubini-Study) of the
    previous one so that consecutive logarithms stay well defined."""
    geom = Projective(1)
    points = [geom.random_point(rng)]
    while len(points) < count:
        q = geom.random_point(rng)
        if geom.distance(points[-1], q) <= max_step:
            points.append(q)
    return InterpolationProblem(geom, points, **kw)


def quaternion_problem(rng, count=5, **kw):
    """Random orientations as unit quaternions on S^3.

    Signs are chosen so that consecutive quaternions have a non-negative
    inner product, i.e. the shorter of the two equivalent arcs is used.
    """
    geom = Sphere(3)
    points = [geom.random_point(rng)]
    for _ in range(count - 1):
        q = geom.random_point(rng)
        points.append(q if np.dot(points[-1], q) >= 0 else -q)
    return InterpolationProblem(geom, points, **kw)
