import math

import numpy as np
import pytest

from symspline import GeometryError, Grassmannian, Projective, Sphere
from symspline.projections import (
    frames_from_quaternions,
    kernel_direction,
    lower_hemisphere,
    project_bloch,
    project_stereographic,
    quaternion_to_matrix,
    stereographic,
)


@pytest.mark.parametrize(
    "direction, expected",
    [
        ((0.0, 0.0, -1.0), (0.0, 0.0)),
        ((0.0, 0.0, 1.0), (0.0, 0.0)),
        ((1.0, 0.0, 0.0), (1.0, 0.0)),
        ((-1.0, 0.0, 0.0), (1.0, 0.0)),
        ((0.0, -1.0, 0.0), (0.0, 1.0)),
        ((0.0, -math.sqrt(0.5), -math.sqrt(0.5)), (0.0, -0.41421356237)),
        ((0.0, math.sqrt(0.5), math.sqrt(0.5)), (0.0, -0.41421356237)),
    ],
)
def test_stereographic_examples(direction, expected):
    np.testing.assert_allclose(stereographic(direction), expected, atol=1e-10)


def test_lower_hemisphere_is_sign_invariant(rng):
    for _ in range(50):
        k = rng.standard_normal(3)
        np.testing.assert_array_equal(lower_hemisphere(k), lower_hemisphere(-k))
        assert lower_hemisphere(k)[2] <= 0


def test_kernel_direction_is_the_normal(rng):
    geom = Grassmannian(2, 3)
    for _ in range(20):
        y = geom.random_point(rng)
        k = kernel_direction(y)
        np.testing.assert_allclose(y.T @ k, 0.0, atol=1e-14)
        assert abs(np.linalg.norm(k) - 1) < 1e-14


def test_stereographic_ignores_the_frame_choice(rng):
    geom = Grassmannian(2, 3)
    pts = [geom.random_point(rng) for _ in range(20)]
    rotated = []
    for y in pts:
        a = rng.standard_normal()
        r = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
        if rng.random() < 0.5:
            r = r @ np.diag([1.0, -1.0])
        rotated.append(y @ r)
    a, b = project_stereographic(geom, pts), project_stereographic(geom, rotated)
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert np.all(np.isfinite(a)) and np.all(np.linalg.norm(a, axis=1) <= 1 + 1e-12)


@pytest.mark.parametrize(
    "state, expected",
    [
        ((1, 0), (0, 0, 1)),
        ((0, 1), (0, 0, -1)),
        ((math.sqrt(0.5), math.sqrt(0.5)), (1, 0, 0)),
        ((math.sqrt(0.5), 1j * math.sqrt(0.5)), (0, 1, 0)),
    ],
)
def test_bloch_examples(state, expected):
    out = project_bloch(Projective(1), [np.array(state, dtype=complex)])
    np.testing.assert_allclose(out[0], expected, atol=1e-15)


def test_bloch_is_unit_and_phase_invariant(rng):
    geom = Projective(1)
    pts = [geom.random_point(rng) for _ in range(50)]
    phased = [np.exp(1j * rng.uniform(0, 2 * np.pi)) * p for p in pts]
    a, b = project_bloch(geom, pts), project_bloch(geom, phased)
    assert np.max(np.abs(np.linalg.norm(a, axis=1) - 1)) <= 1e-10
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_quaternion_identity_frame():
    np.testing.assert_array_equal(frames_from_quaternions(Sphere(3), [np.array([1.0, 0, 0, 0])])[0], np.eye(3))


def test_quarter_turn_about_x():
    q = np.array([math.cos(math.pi / 4), math.sin(math.pi / 4), 0, 0])
    frame = frames_from_quaternions(Sphere(3), [q])[0]
    np.testing.assert_allclose(frame, [[1, 0, 0], [0, 0, 1], [0, -1, 0]], atol=1e-15)


def test_quaternion_frames_are_rotations_and_sign_blind(rng):
    geom = Sphere(3)
    qs = [geom.random_point(rng) for _ in range(50)]
    frames = frames_from_quaternions(geom, qs)
    flipped = frames_from_quaternions(geom, [-q for q in qs])
    for f in frames:
        np.testing.assert_allclose(f @ f.T, np.eye(3), atol=1e-12)
        assert abs(np.linalg.det(f) - 1) < 1e-12
    np.testing.assert_allclose(frames, flipped, atol=1e-15)


def test_quaternion_products_compose(rng):
    def qmul(a, b):
        w1, x1, y1, z1 = a
        w2, x2, y2, z2 = b
        return np.array([
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ])
    a, b = (Sphere(3).random_point(rng) for _ in range(2))
    np.testing.assert_allclose(quaternion_to_matrix(qmul(a, b)), quaternion_to_matrix(a) @ quaternion_to_matrix(b), atol=1e-14)


@pytest.mark.parametrize(
    "func, geom",
    [
        (project_stereographic, Grassmannian(2, 4)),
        (project_stereographic, Sphere(2)),
        (project_bloch, Projective(2)),
        (frames_from_quaternions, Sphere(2)),
    ],
    ids=lambda x: getattr(x, "__name__", repr(x)),
)
def test_wrong_geometry_is_rejected(func, geom, rng):
    with pytest.raises(GeometryError):
        func(geom, [geom.random_point(rng)])
