import numpy as np
import pytest

from symspline import Flat, Grassmannian, Projective, Sphere

GEOMETRIES = [Flat(3), Sphere(2), Grassmannian(2, 4), Projective(2)]
CURVED = [Sphere(2), Grassmannian(2, 4), Projective(2)]


def random_walk(geom, rng, count, step):
    """``count`` points, consecutive ones exactly ``step`` apart."""
    pts = [geom.random_point(rng)]
    for _ in range(count - 1):
        pts.append(geom.exp(pts[-1], geom.random_tangent(rng, pts[-1], step)))
    return pts


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=GEOMETRIES, ids=repr)
def geom(request):
    return request.param


@pytest.fixture(params=CURVED, ids=repr)
def curved(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
