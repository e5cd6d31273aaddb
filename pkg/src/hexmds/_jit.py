"""Numba switch.

Kernels are written once in numba-compatible Python. ``HEXMDS_NUMBA=0`` (or a
missing numba install) runs the same source as plain Python over numpy arrays.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("HEXMDS_NUMBA", "1").strip().lower()
NUMBA_ENABLED = numba is not None and _FLAG not in ("0", "false", "no", "off")


def jit(func):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend():
    return "numba" if NUMBA_ENABLED else "python"
