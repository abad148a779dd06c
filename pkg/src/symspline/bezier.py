"""Cubic Bezier segments by geodesic De Casteljau, and composite curves."""
from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Sequence

import numpy as np

from .errors import DomainError
from .geometry import SymmetricSpace

__all__ = [
    "CubicSegment",
    "CompositeCurve",
    "decasteljau",
    "curve_eval",
    "numeric_derivative",
]


@dataclass(frozen=True)
class CubicSegment:
    """Endpoints ``p0``, ``p1`` and inner control points ``q0``, ``q1``."""

    p0: np.ndarray
    q0: np.ndarray
    q1: np.ndarray
    p1: np.ndarray


def decasteljau(geometry: SymmetricSpace, seg: CubicSegment, t: float):
    """Evaluate a cubic segment at ``t`` in ``[0, 1]``.

    Three rounds of geodesic interpolation: the control polygon
    ``p0-q0-q1-p1`` is cut at ``t`` on each edge, then the three resulting
    points, then the two.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"segment parameter {t} outside [0, 1]")
    if t == 0.0:
        return np.array(seg.p0)
    if t == 1.0:
        return np.array(seg.p1)
    g = geometry.geodesic
    a = g(seg.p0, seg.q0, t)
    b = g(seg.q0, seg.q1, t)
    c = g(seg.q1, seg.p1, t)
    return g(g(a, b, t), g(b, c, t), t)


@dataclass(frozen=True)
class CompositeCurve:
    """Piecewise cubic curve on ``[0, N]``; segment ``i`` covers ``[i, i+1]``."""

    geometry: SymmetricSpace
    segments: Sequence[CubicSegment]

    @property
    def n_segments(self):
        return len(self.segments)

    def __call__(self, t):
        return curve_eval(self, t)

    def locate(self, t):
        """Return ``(segment index, local time)`` for a global parameter."""
        n = self.n_segments
        if not 0.0 <= t <= n:
            raise DomainError(f"curve parameter {t} outside [0, {n}]")
        i = min(int(math.floor(t)), n - 1)
        return i, t - i


def curve_eval(curve: CompositeCurve, t: float):
    i, s = curve.locate(t)
    return decasteljau(curve.geometry, curve.segments[i], s)


# One-sided stencils are second-order accurate so that left and right
# estimates at a knot agree to O(h**2) rather than O(h).
_STENCILS = {
    (1, "central"): ((-1, 1), (-0.5, 0.5)),
    (2, "central"): ((-1, 0, 1), (1.0, -2.0, 1.0)),
    (1, "right"): ((0, 1, 2), (-1.5, 2.0, -0.5)),
    (1, "left"): ((0, -1, -2), (1.5, -2.0, 0.5)),
    (2, "right"): ((0, 1, 2, 3), (2.0, -5.0, 4.0, -1.0)),
    (2, "left"): ((0, -1, -2, -3), (2.0, -5.0, 4.0, -1.0)),
}


def numeric_derivative(curve: CompositeCurve, t: float, order=1, h=1e-4, side="central"):
    """Intrinsic finite-difference derivative of ``curve`` at ``t``.

    Nearby curve points are pulled back to the tangent space at
    ``curve(t)`` with the logarithm (normal coordinates, where the
    covariant acceleration is the ordinary second derivative) and a
    standard stencil is applied there.  Left-sided stencils only evaluate
    ``curve`` on ``[t - 3h, t]``, so at a knot they see the left segment.
    """
    if h <= 0:
        raise DomainError("step must be positive")
    try:
        offsets, weights = _STENCILS[(order, side)]
    except KeyError:
        raise DomainError(f"unsupported derivative order={order!r}, side={side!r}") from None
    n = curve.n_segments
    lo, hi = t + min(offsets) * h, t + max(offsets) * h
    if lo < 0.0 or hi > n:
        raise DomainError(f"stencil [{lo}, {hi}] leaves [0, {n}]")
    geom = curve.geometry
    base = curve_eval(curve, t)
    total = geom.zero_tangent(base)
    for k, w in zip(offsets, weights):
        if k == 0:
            continue
        tk = t + k * h
        if side == "left":
            # evaluate on the left segment even when tk lands on a knot
            i = max(int(math.ceil(tk)) - 1, 0)
            pt = decasteljau(geom, curve.segments[i], tk - i)
        else:
            pt = curve_eval(curve, tk)
        total = total + w * geom.log(base, pt)
    return total / h ** order
