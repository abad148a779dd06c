"""Symmetric-space kernels: action, movement function, logarithm.

Points, tangents and group elements are plain numpy arrays.  A geometry
object knows how to interpret them:

=============  ===================  =====================  ==================
geometry       point                tangent at ``p``       group element
=============  ===================  =====================  ==================
Flat(n)        ``(n,)`` real        ``(n,)`` real          ``(n+1, n+1)``
                                                           homogeneous matrix
Sphere(n)      ``(n+1,)`` unit      orthogonal to ``p``    ``O(n+1)``
Projective(n)  ``(n+1,)`` complex   ``p^H v = 0``          ``U(n+1)``
               unit, any phase
Grassmannian   ``(n, k)`` frame     ``Y^T v = 0``          ``O(n)``
(k, n)         with orthonormal
               columns
=============  ===================  =====================  ==================

Lie algebra elements in the reductive complement ``m_p`` are matrices of the
same size as the group elements.  The algebra inner product is normalised so
that ``algebra_norm(lift(p, v)) == norm(p, v)``.

Projective points and Grassmannian frames are representatives of quotient
classes; compare them with :meth:`SymmetricSpace.distance`, never entrywise.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import GeometryError, LogUndefined

__all__ = [
    "SymmetricSpace",
    "Flat",
    "Sphere",
    "Projective",
    "Grassmannian",
    "make_geometry",
]

# below this angle the sinc-type factors switch to Taylor series
SMALL_ANGLE = 1e-4
# sphere-like logs are refused this close to the cut locus
CUT_MARGIN = 1e-6
# Grassmannian logs are refused when Y_p^T Y_q has a singular value below this
GRASSMANN_SINGULAR = 1e-10

POINT_TOL = 1e-12
TANGENT_TOL = 1e-10
# random triples drawn by the curvature estimator of geometries without a closed value
CURVATURE_SAMPLES = 10_000


def _sinc(theta):
    """sin(x)/x."""
    if abs(theta) < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0
    return math.sin(theta) / theta


def _cosc(theta):
    """(1 - cos(x))/x**2."""
    if abs(theta) < SMALL_ANGLE:
        t2 = theta * theta
        return 0.5 - t2 / 24.0 + t2 * t2 / 720.0
    return (1.0 - math.cos(theta)) / (theta * theta)


def _inv_sinc(theta):
    """x/sin(x)."""
    if abs(theta) < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    return theta / math.sin(theta)


def _random_orthogonal(rng, n, complex_=False):
    a = rng.standard_normal((n, n))
    if complex_:
        a = a + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


class SymmetricSpace:
    """Interface shared by all geometries.

    Subclasses provide ``act``, ``act_tangent``, ``movement``, ``log``,
    ``lift``, ``drop``, the validity checks and random sampling; the
    derived operations (geodesic, distance, symmetry) live here.
    """

    name: str = "abstract"
    dtype: type = float

    # -- shapes and validation ---------------------------------------------

    @property
    def point_shape(self) -> tuple:
        raise NotImplementedError

    @property
    def group_size(self) -> int:
        raise NotImplementedError

    @property
    def params(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params == other.params

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.params.items()))))

    def _check_shape(self, x, what):
        x = np.asarray(x)
        if x.shape != self.point_shape:
            raise GeometryError(
                f"{what} has shape {x.shape}, {self!r} expects {self.point_shape}"
            )
        return x

    def check_point(self, p, tol=POINT_TOL):
        """Raise :class:`GeometryError` unless ``p`` is a valid point."""
        self._check_shape(p, "point")

    def check_tangent(self, p, v, tol=TANGENT_TOL):
        """Raise :class:`GeometryError` unless ``v`` is tangent at ``p``."""
        self._check_shape(v, "tangent")

    def check_group(self, g):
        g = np.asarray(g)
        m = self.group_size
        if g.shape != (m, m):
            raise GeometryError(
                f"group element has shape {g.shape}, {self!r} expects {(m, m)}"
            )
        return g

    def normalize(self, raw):
        """Project raw coordinates onto the manifold (used for file input)."""
        return np.asarray(raw, dtype=self.dtype)

    # -- group structure ---------------------------------------------------

    def identity(self):
        return np.eye(self.group_size, dtype=self.dtype)

    def compose(self, g, h):
        return self.check_group(g) @ self.check_group(h)

    def inverse(self, g):
        return self.check_group(g).conj().T

    def act(self, g, p):
        raise NotImplementedError

    def act_tangent(self, g, v):
        """Prolonged action of ``g`` on a tangent vector."""
        raise NotImplementedError

    def movement(self, p, v):
        """Group element ``E_p(v) = exp(lift(p, v))``."""
        raise NotImplementedError

    def log(self, p, q):
        raise NotImplementedError

    # -- Lie algebra -------------------------------------------------------

    def lift(self, p, v):
        """The element of ``m_p`` whose infinitesimal action on ``p`` is ``v``."""
        raise NotImplementedError

    def drop(self, p, xi):
        """Infinitesimal action ``xi . p``."""
        raise NotImplementedError

    def algebra_inner(self, xi, eta):
        return 0.5 * float(np.real(np.vdot(xi, eta)))

    def algebra_norm(self, xi):
        return math.sqrt(max(self.algebra_inner(xi, xi), 0.0))

    @staticmethod
    def bracket(xi, eta):
        return xi @ eta - eta @ xi

    # -- metric ------------------------------------------------------------

    def inner(self, p, u, v):
        return float(np.real(np.vdot(u, v)))

    def norm(self, p, v):
        return float(np.linalg.norm(v))

    def zero_tangent(self, p):
        return np.zeros(self.point_shape, dtype=self.dtype)

    def project_tangent(self, p, w):
        """Orthogonal projection of an ambient vector onto the tangent space."""
        raise NotImplementedError

    # -- derived operations ------------------------------------------------

    def exp(self, p, v):
        """Geodesic endpoint ``E_p(v) . p``."""
        return self.act(self.movement(p, v), p)

    def geodesic(self, p, q, t):
        """Point at time ``t`` on the interpolating curve from ``p`` to ``q``."""
        v = self.log(p, q)
        # endpoints are returned verbatim so that curves interpolate exactly
        if t == 0:
            return np.array(p, dtype=self.dtype)
        if t == 1:
            return np.array(q, dtype=self.dtype)
        return self.exp(p, t * v)

    def distance(self, p, q):
        return self.norm(p, self.log(p, q))

    def geodesic_symmetry(self, p, q):
        """Point reflection ``I_p(q)`` of ``q`` through ``p``."""
        return self.exp(p, -self.log(p, q))

    def curvature_bound(self, samples=None, seed=0):
        """Sampled estimate of ``K`` (``K**2`` bounds the double bracket).

        Draws ``samples`` random normalised triples in ``m_p`` and returns the
        square root of the largest observed ratio.  This is a lower estimate
        of the true supremum.
        """
        samples = CURVATURE_SAMPLES if samples is None else samples
        key = (samples, seed)
        cache = self.__dict__.setdefault("_curvature_cache", {})
        if key in cache:
            return cache[key]
        rng = np.random.default_rng(seed)
        p = self.random_point(rng)
        best = 0.0
        for _ in range(samples):
            xi, eta, zeta = (self.lift(p, self.random_tangent(rng, p)) for _ in range(3))
            denom = self.algebra_norm(xi) * self.algebra_norm(eta) * self.algebra_norm(zeta)
            if denom == 0.0:
                continue
            ratio = self.algebra_norm(self.bracket(xi, self.bracket(eta, zeta))) / denom
            best = max(best, ratio)
        cache[key] = math.sqrt(best)
        return cache[key]

    curvature_is_exact = False

    # -- sampling ----------------------------------------------------------

    def random_point(self, rng):
        raise NotImplementedError

    def random_tangent(self, rng, p, scale=1.0):
        """Tangent at ``p`` with norm ``scale`` in a uniformly random direction."""
        w = self.project_tangent(p, self._gaussian(rng))
        nrm = self.norm(p, w)
        return w * (scale / nrm) if nrm > 0 else w

    def random_group_element(self, rng):
        raise NotImplementedError

    def _gaussian(self, rng):
        x = rng.standard_normal(self.point_shape)
        if self.dtype is complex:
            x = x + 1j * rng.standard_normal(self.point_shape)
        return x


class Flat(SymmetricSpace):
    """Euclidean space R^n acted on by rigid motions."""

    name = "flat"
    curvature_is_exact = True

    def __init__(self, n):
        if n < 1:
            raise GeometryError("Flat needs n >= 1")
        self.n = int(n)

    @property
    def point_shape(self):
        return (self.n,)

    @property
    def group_size(self):
        return self.n + 1

    @property
    def params(self):
        return {"n": self.n}

    def inverse(self, g):
        return np.linalg.inv(self.check_group(g))

    def act(self, g, p):
        g = self.check_group(g)
        p = self._check_shape(p, "point")
        return g[:-1, :-1] @ p + g[:-1, -1]

    def act_tangent(self, g, v):
        return self.check_group(g)[:-1, :-1] @ v

    def movement(self, p, v):
        self.check_tangent(p, v)
        g = np.eye(self.n + 1)
        g[:-1, -1] = v
        return g

    def exp(self, p, v):
        return np.asarray(p, dtype=float) + v

    def log(self, p, q):
        return np.asarray(q, dtype=float) - p

    def distance(self, p, q):
        return float(np.linalg.norm(np.asarray(q) - p))

    def lift(self, p, v):
        xi = np.zeros((self.n + 1, self.n + 1))
        xi[:-1, -1] = v
        return xi

    def drop(self, p, xi):
        return xi[:-1, :-1] @ p + xi[:-1, -1]

    def algebra_inner(self, xi, eta):
        rot = 0.5 * float(np.vdot(xi[:-1, :-1], eta[:-1, :-1]))
        return rot + float(np.dot(xi[:-1, -1], eta[:-1, -1]))

    def project_tangent(self, p, w):
        return np.asarray(w, dtype=float)

    def curvature_bound(self, samples=None, seed=0):
        return 0.0

    def random_point(self, rng):
        return rng.standard_normal(self.n)

    def random_group_element(self, rng):
        g = np.eye(self.n + 1)
        g[:-1, :-1] = _random_orthogonal(rng, self.n)
        g[:-1, -1] = rng.standard_normal(self.n)
        return g


class _UnitVectorSpace(SymmetricSpace):
    """Shared code for the sphere and complex projective space.

    Both are orbits of a unit vector under O(n+1) resp. U(n+1), and their
    geodesics are great circles ``cos(t) p + sin(t) u``.
    """

    def __init__(self, n):
        if n < 1:
            raise GeometryError(f"{type(self).__name__} needs n >= 1")
        self.n = int(n)

    @property
    def point_shape(self):
        return (self.n + 1,)

    @property
    def group_size(self):
        return self.n + 1

    @property
    def params(self):
        return {"n": self.n}

    def check_point(self, p, tol=POINT_TOL):
        p = self._check_shape(p, "point")
        err = abs(np.linalg.norm(p) - 1.0)
        if not err <= tol:
            raise GeometryError(f"point is not a unit vector (|norm - 1| = {err:.2e})")

    def check_tangent(self, p, v, tol=TANGENT_TOL):
        v = self._check_shape(v, "tangent")
        err = abs(np.vdot(p, v))
        if not err <= tol * max(1.0, float(np.linalg.norm(v))):
            raise GeometryError(f"vector is not tangent at p (<p, v> = {err:.2e})")

    def normalize(self, raw):
        x = np.asarray(raw, dtype=self.dtype)
        nrm = np.linalg.norm(x)
        if x.shape != self.point_shape or nrm == 0:
            raise GeometryError(f"cannot normalise {x.shape} input onto {self!r}")
        return x / nrm

    def act(self, g, p):
        g = self.check_group(g)
        return g @ self._check_shape(p, "point")

    def act_tangent(self, g, v):
        return self.check_group(g) @ v

    def movement(self, p, v):
        self.check_tangent(p, v)
        theta = self.norm(p, v)
        if theta == 0.0:
            return self.identity()
        xi = np.outer(v, p.conj()) - np.outer(p, v.conj())
        sym = theta * theta * np.outer(p, p.conj()) + np.outer(v, v.conj())
        return self.identity() + _sinc(theta) * xi - _cosc(theta) * sym

    def exp(self, p, v):
        theta = self.norm(p, v)
        return math.cos(theta) * np.asarray(p) + _sinc(theta) * v

    def _aligned(self, p, q):
        """Return ``q`` rephased so that ``<p, q>`` is real, and that product."""
        return q, float(np.real(np.vdot(p, q)))

    def log(self, p, q):
        q, c = self._aligned(p, np.asarray(q))
        w = q - c * p
        s = float(np.linalg.norm(w))
        theta = math.atan2(s, c)
        if theta > self.cut_angle - CUT_MARGIN:
            raise LogUndefined(
                f"points are {theta:.6f} apart, cut locus of {self!r} at {self.cut_angle:.6f}"
            )
        return _inv_sinc(theta) * w

    def distance(self, p, q):
        q, c = self._aligned(p, np.asarray(q))
        s = float(np.linalg.norm(q - c * p))
        return math.atan2(s, c)

    def lift(self, p, v):
        return np.outer(v, p.conj()) - np.outer(p, v.conj())

    def drop(self, p, xi):
        return xi @ p

    def project_tangent(self, p, w):
        w = np.asarray(w, dtype=self.dtype)
        return w - p * np.vdot(p, w)

    def random_point(self, rng):
        x = self._gaussian(rng)
        return x / np.linalg.norm(x)


class Sphere(_UnitVectorSpace):
    """Unit sphere S^n in R^(n+1) as O(n+1)/O(n)."""

    name = "sphere"
    cut_angle = math.pi
    curvature_is_exact = True

    def curvature_bound(self, samples=None, seed=0):
        return 1.0

    def random_group_element(self, rng):
        return _random_orthogonal(rng, self.n + 1)


class Projective(_UnitVectorSpace):
    """Complex projective space CP^n as U(n+1)/(U(n) x U(1)).

    Points are unit vectors in C^(n+1); any global phase denotes the same
    point.  The metric is the Fubini-Study metric with diameter pi/2.
    """

    name = "projective"
    dtype = complex
    cut_angle = math.pi / 2

    def _aligned(self, p, q):
        c = complex(np.vdot(p, q))
        a = abs(c)
        if a == 0.0:
            return q, 0.0
        return q * (c.conjugate() / a), a

    def random_group_element(self, rng):
        return _random_orthogonal(rng, self.n + 1, complex_=True)


class Grassmannian(SymmetricSpace):
    """Real Grassmannian Gr(k, n) of k-planes in R^n as O(n)/(O(k) x O(n-k)).

    A point is an ``n x k`` frame with orthonormal columns; the point is its
    column span.  Tangents are horizontal ``n x k`` matrices (``Y^T v = 0``),
    expressed relative to the frame they are attached to.
    """

    name = "grassmannian"

    def __init__(self, k, n):
        if not 0 < k < n:
            raise GeometryError(f"Grassmannian needs 0 < k < n, got k={k}, n={n}")
        self.k = int(k)
        self.n = int(n)

    @property
    def point_shape(self):
        return (self.n, self.k)

    @property
    def group_size(self):
        return self.n

    @property
    def params(self):
        return {"k": self.k, "n": self.n}

    def check_point(self, p, tol=POINT_TOL):
        p = self._check_shape(p, "point")
        err = np.linalg.norm(p.T @ p - np.eye(self.k))
        if not err <= tol:
            raise GeometryError(f"frame columns are not orthonormal (error {err:.2e})")

    def check_tangent(self, p, v, tol=TANGENT_TOL):
        v = self._check_shape(v, "tangent")
        err = np.linalg.norm(p.T @ v)
        if not err <= tol * max(1.0, float(np.linalg.norm(v))):
            raise GeometryError(f"vector is not horizontal at p (|Y^T v| = {err:.2e})")

    @staticmethod
    def _orthonormalize(x):
        q, r = np.linalg.qr(x)
        s = np.sign(np.diagonal(r))
        s[s == 0] = 1.0
        return q * s

    def normalize(self, raw):
        x = np.asarray(raw, dtype=float)
        if x.shape != self.point_shape or np.linalg.matrix_rank(x) < self.k:
            raise GeometryError(f"cannot orthonormalise {x.shape} input onto {self!r}")
        return self._orthonormalize(x)

    def act(self, g, p):
        g = self.check_group(g)
        return self._orthonormalize(g @ self._check_shape(p, "point"))

    def act_tangent(self, g, v):
        return self.check_group(g) @ v

    def movement(self, p, v):
        self.check_tangent(p, v)
        u, s, vt = np.linalg.svd(v, full_matrices=False)
        if not np.any(s):
            return self.identity()
        a = p @ vt.T
        b = u
        cos_1 = np.cos(s) - 1.0
        sin = np.sin(s)
        g = (
            np.eye(self.n)
            + (a * cos_1 + b * sin) @ a.T
            + (b * cos_1 - a * sin) @ b.T
        )
        if np.linalg.norm(g.T @ g - np.eye(self.n)) > TANGENT_TOL:
            from .oracle import dense_matrix_exponential

            g = dense_matrix_exponential(self.lift(p, v))
        return g

    def log(self, p, q):
        q = np.asarray(q)
        a = p.T @ q
        if np.linalg.svd(a, compute_uv=False).min() < GRASSMANN_SINGULAR:
            raise LogUndefined("planes contain orthogonal directions (Y_p^T Y_q is singular)")
        m = np.linalg.solve(a.T, (q - p @ a).T).T
        u, s, vt = np.linalg.svd(m, full_matrices=False)
        return (u * np.arctan(s)) @ vt

    def distance(self, p, q):
        try:
            return self.norm(p, self.log(p, q))
        except LogUndefined:
            cos = np.clip(np.linalg.svd(p.T @ np.asarray(q), compute_uv=False), -1.0, 1.0)
            return float(np.linalg.norm(np.arccos(cos)))

    def lift(self, p, v):
        return v @ p.T - p @ v.T

    def drop(self, p, xi):
        return xi @ p

    def project_tangent(self, p, w):
        w = np.asarray(w, dtype=float)
        return w - p @ (p.T @ w)

    def random_point(self, rng):
        return self._orthonormalize(rng.standard_normal(self.point_shape))

    def random_group_element(self, rng):
        return _random_orthogonal(rng, self.n)


def make_geometry(name, **params) -> SymmetricSpace:
    """Build a geometry from its file-format name and parameters."""
    table = {"flat": Flat, "sphere": Sphere, "projective": Projective, "grassmannian": Grassmannian}
    try:
        cls = table[name]
    except KeyError:
        raise GeometryError(f"unknown geometry {name!r}; expected one of {sorted(table)}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise GeometryError(f"bad parameters for {name}: {exc}") from None
