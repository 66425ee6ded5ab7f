"""Select the compiled kernels if available, else the pure-Python ones.

Set ``COEXIST_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

FEASIBLE, STALLED, MAX_ITER = _fallback.FEASIBLE, _fallback.STALLED, _fallback.MAX_ITER

_compiled = None
if not os.environ.get("COEXIST_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

COMPILED = _compiled is not None
BACKEND = "cython" if COMPILED else "python"
dykstra = _compiled.dykstra if COMPILED else _fallback.dykstra
