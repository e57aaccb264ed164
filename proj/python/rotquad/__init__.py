"""R_f rotation invariants of fixed points of sphere homeomorphisms.

Maps are the JSON trees used by scenario files; points are complex numbers,
with None standing for the point at infinity.
"""

import json

from . import _rotquad
from ._rotquad import RotquadError, parse_cycles, theta, theta_action, theta_kernel_image

__version__ = _rotquad.__version__

__all__ = [
    "RotquadError",
    "compute",
    "double_blowup",
    "blowup",
    "parse_cycles",
    "rf",
    "theta",
    "theta_action",
    "theta_kernel_image",
    "verify",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def rf(map_spec, points, method="loop", seed=0):
    """Integer R_f(x1, x2, x3, x4), or None if every retry was inconclusive."""
    return _rotquad.rf(_dump(map_spec), list(points), method, seed)


def blowup(map_spec, p, x2, x4, n_iters=10000, extrapolate=False):
    """R_f(p, x2, p, x4) estimate with its 2/n error bound."""
    return _rotquad.rf_blowup(_dump(map_spec), p, x2, x4, n_iters, extrapolate)


def double_blowup(map_spec, p1, p2):
    return _rotquad.rf_double_blowup(_dump(map_spec), p1, p2)


def compute(scenario):
    """Run the compute command on a scenario; returns (exit_code, report)."""
    code, report = _rotquad.compute(_dump(scenario))
    return code, json.loads(report)


def verify(scenario=None, suite="all"):
    code, report = _rotquad.verify("" if scenario is None else _dump(scenario), suite)
    return code, json.loads(report)
