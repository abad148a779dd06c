"""C2 cubic splines on Riemannian symmetric spaces.

>>> import numpy as np
>>> from symspline import Sphere, InterpolationProblem, solve
>>> pts = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]
>>> net, report = solve(InterpolationProblem(Sphere(2), pts))
>>> curve = net.curve()
>>> point = curve(0.5)
"""
from .bezier import CompositeCurve, CubicSegment, curve_eval, decasteljau, numeric_derivative
from .errors import (
    Diverged,
    DomainError,
    GeometryError,
    InputError,
    LogUndefined,
    NotConverged,
    SymsplineError,
)
from .geometry import Flat, Grassmannian, Projective, Sphere, SymmetricSpace, make_geometry
from .solver import (
    Clamped,
    ControlNet,
    InterpolationProblem,
    Natural,
    SolveReport,
    c1_residual,
    c2_residual,
    data_diameter,
    omega,
    solve,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Clamped", "CompositeCurve", "ControlNet", "CubicSegment", "Diverged", "DomainError",
    "Flat", "GeometryError", "Grassmannian", "InputError", "InterpolationProblem",
    "LogUndefined", "Natural", "NotConverged", "Projective", "SolveReport", "Sphere",
    "SymmetricSpace", "SymsplineError", "c1_residual", "c2_residual", "curve_eval",
    "data_diameter", "decasteljau", "make_geometry", "numeric_derivative", "omega",
    "solve", "sweep",
]
