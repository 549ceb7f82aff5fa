"""Hot kernels: exact convex hull and exact simplex.

The compiled extension is used when it was built; set
``AFFINE_PLANNER_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _pykernel

BACKENDS = {"python": _pykernel}

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None
else:
    BACKENDS["cython"] = _ckernel

if _ckernel is not None and not os.environ.get("AFFINE_PLANNER_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

hull = BACKENDS[BACKEND].hull
simplex = BACKENDS[BACKEND].simplex
det = _pykernel.det


def use(name: str) -> None:
    """Switch backend for the whole process (tests and benchmarks)."""
    global BACKEND, hull, simplex
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    BACKEND = name
    hull = BACKENDS[name].hull
    simplex = BACKENDS[name].simplex

OPTIMAL = _pykernel.OPTIMAL
INFEASIBLE = _pykernel.INFEASIBLE
UNBOUNDED = _pykernel.UNBOUNDED

__all__ = ["BACKEND", "BACKENDS", "use", "hull", "simplex", "det", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]
