"""Visualisation maps for the demo geometries."""
from __future__ import annotations

import numpy as np

from .errors import GeometryError
from .geometry import Grassmannian, Projective, Sphere

__all__ = [
    "kernel_direction",
    "lower_hemisphere",
    "stereographic",
    "project_stereographic",
    "project_bloch",
    "quaternion_to_matrix",
    "frames_from_quaternions",
]

_TIE = 1e-9


def _require(geometry, cls, what, **params):
    if not isinstance(geometry, cls) or any(getattr(geometry, k) != v for k, v in params.items()):
        raise GeometryError(f"{what} needs {cls.__name__}({params}), got {geometry!r}")


def kernel_direction(frame):
    """Unit normal of the plane spanned by a ``3 x 2`` frame."""
    frame = np.asarray(frame, dtype=float)
    k = np.cross(frame[:, 0], frame[:, 1])
    return k / np.linalg.norm(k)


def lower_hemisphere(direction):
    """Representative of the line through ``direction`` with ``z <= 0``.

    On the equator (``|z| <= 1e-9``) the one with ``x > 0`` is chosen, and
    if also ``x`` vanishes, the one with ``y > 0``.
    """
    k = np.asarray(direction, dtype=float)
    k = k / np.linalg.norm(k)
    x, y, z = k
    if z > _TIE:
        return -k
    if abs(z) <= _TIE and (x < -_TIE or (abs(x) <= _TIE and y < 0)):
        return -k
    return k


def stereographic(direction):
    """Project a line in R^3 to the plane from the north pole, using its
    lower-hemisphere representative."""
    x, y, z = lower_hemisphere(direction)
    return np.array([x / (1.0 - z), y / (1.0 - z)])


def project_stereographic(geometry, points):
    """Map Gr(2, 3) points to the plane via their kernel direction.

    The kernel line of the ``2 x 3`` matrix ``frame^T`` meets the lower
    hemisphere in ``(x, y, z)``, which goes to ``(x / (1 - z), y / (1 - z))``.
    Outputs lie in the closed unit disc.
    """
    _require(geometry, Grassmannian, "stereographic projection", k=2, n=3)
    return np.array([stereographic(kernel_direction(f)) for f in points]).reshape(-1, 2)


def project_bloch(geometry, points):
    """Bloch-sphere coordinates of CP^1 points (phase invariant)."""
    _require(geometry, Projective, "Bloch projection", n=1)
    out = []
    for a, b in (np.asarray(p) for p in points):
        ab = np.conj(a) * b
        out.append((2.0 * ab.real, 2.0 * ab.imag, abs(a) ** 2 - abs(b) ** 2))
    return np.array(out).reshape(-1, 3)


def quaternion_to_matrix(q):
    """Rotation matrix of ``v -> q v q^-1`` for a unit quaternion
    ``(w, x, y, z)``; its columns are the images of ``i``, ``j``, ``k``."""
    w, x, y, z = np.asarray(q, dtype=float) / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def frames_from_quaternions(geometry, points):
    """Rotated basis ``(R i, R j, R k)`` for each S^3 point, shape ``(m, 3, 3)``
    with ``out[m, a]`` the image of the ``a``-th basis vector."""
    _require(geometry, Sphere, "quaternion frames", n=3)
    return np.array([quaternion_to_matrix(q).T for q in points]).reshape(-1, 3, 3)
