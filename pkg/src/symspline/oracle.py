"""Independent reference computations.

Nothing here depends on the symmetric-space machinery: the Euclidean
spline is the classical tridiagonal solve, the matrix exponential is a
plain Taylor scaling-and-squaring, and the Jacobian is a central
difference.  Tests use these to check the geometric code paths, and the
CLI exposes the spline solve with ``--oracle`` for flat problems.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

__all__ = [
    "TridiagonalSystem",
    "euclidean_spline_velocities",
    "dense_matrix_exponential",
    "finite_difference_jacobian",
]


@dataclass(frozen=True)
class TridiagonalSystem:
    """Linear system with bands ``sub``, ``diag``, ``sup`` and (possibly
    vector-valued) right-hand side ``rhs``.

    ``sub[i]`` multiplies ``x[i]`` in row ``i+1`` and ``sup[i]`` multiplies
    ``x[i+1]`` in row ``i``, so both have length ``len(diag) - 1``.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def dense(self):
        n = len(self.diag)
        a = np.diag(np.asarray(self.diag, dtype=float))
        if n > 1:
            a += np.diag(np.asarray(self.sub, dtype=float), -1)
            a += np.diag(np.asarray(self.sup, dtype=float), 1)
        return a

    def solve(self):
        """Thomas algorithm; no pivoting, so the system must be diagonally
        dominant (the spline systems are)."""
        diag = np.asarray(self.diag, dtype=float)
        sub = np.asarray(self.sub, dtype=float)
        sup = np.asarray(self.sup, dtype=float)
        d = np.array(self.rhs, dtype=float)
        n = len(diag)
        c = np.zeros(max(n - 1, 0))
        b = diag[0]
        if n > 1:
            c[0] = sup[0] / b
        d[0] = d[0] / b
        for i in range(1, n):
            b = diag[i] - sub[i - 1] * c[i - 1]
            if i < n - 1:
                c[i] = sup[i] / b
            d[i] = (d[i] - sub[i - 1] * d[i - 1]) / b
        for i in range(n - 2, -1, -1):
            d[i] = d[i] - c[i] * d[i + 1]
        return d


def euclidean_spline_velocities(points, boundary="natural", v_start=None, v_end=None):
    """Knot velocities of the classical C2 cubic spline through ``points``.

    ``points`` has shape ``(N+1, n)``.  The knot derivative is ``m = 3 v``,
    where ``v`` is the offset from a knot to its adjacent Bezier control
    points.  ``boundary`` is ``"natural"``, ``"clamped"`` (then ``v_start``
    and ``v_end`` are the prescribed end velocities) or any object with a
    ``kind`` attribute and, for clamped, ``v_start``/``v_end`` attributes.

    >>> euclidean_spline_velocities([[0.0], [1.0], [0.0]]).ravel()
    array([ 0.5,  0. , -0.5])
    """
    kind = getattr(boundary, "kind", boundary)
    if kind == "clamped" and v_start is None:
        v_start, v_end = boundary.v_start, boundary.v_end
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        p = p[:, None]
    n = len(p) - 1
    if n < 1:
        raise ValueError("need at least two points")
    diag = np.full(n + 1, 4.0)
    sub = np.ones(n)
    sup = np.ones(n)
    rhs = np.empty_like(p)
    rhs[1:-1] = 3.0 * (p[2:] - p[:-2])
    if kind == "natural":
        diag[0] = diag[-1] = 2.0
        rhs[0] = 3.0 * (p[1] - p[0])
        rhs[-1] = 3.0 * (p[-1] - p[-2])
    elif kind == "clamped":
        diag[0] = diag[-1] = 1.0
        sup[0] = 0.0
        sub[-1] = 0.0
        rhs[0] = 3.0 * np.asarray(v_start, dtype=float)
        rhs[-1] = 3.0 * np.asarray(v_end, dtype=float)
    else:
        raise ValueError(f"unknown boundary condition {kind!r}")
    m = TridiagonalSystem(sub, diag, sup, rhs).solve()
    return m / 3.0


def dense_matrix_exponential(a, max_norm=0.5):
    """Matrix exponential by Taylor series with scaling and squaring.

    The matrix is scaled by ``2**-s`` until its 1-norm is at most
    ``max_norm``, the Taylor series is summed until terms drop below machine
    precision, and the result is squared ``s`` times.
    """
    a = np.asarray(a)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    s = 0 if norm <= max_norm else int(math.ceil(math.log2(norm / max_norm)))
    b = a / (2.0 ** s)
    result = np.eye(n, dtype=np.result_type(a, float))
    term = result.copy()
    for k in range(1, 40):
        term = term @ b / k
        result = result + term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(result, 1):
            break
    for _ in range(s):
        result = result @ result
    return result


def finite_difference_jacobian(f, x, h=1e-6):
    """Central-difference Jacobian of ``f`` at ``x``.

    Arrays are flattened: the result has shape ``(f(x).size, x.size)``.
    """
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    cols = []
    for j in range(flat.size):
        e = np.zeros_like(flat)
        e[j] = h
        fp = np.asarray(f((flat + e).reshape(x.shape)))
        fm = np.asarray(f((flat - e).reshape(x.shape)))
        cols.append(((fp - fm) / (2.0 * h)).ravel())
    return np.stack(cols, axis=1)
