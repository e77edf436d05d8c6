"""Kernel backend selection.

Hot loops are written once as plain Python over numpy arrays and compiled
with numba when it is importable.  Setting ``EXPSPLINE_DISABLE_NUMBA=1``
forces the vectorised numpy fallbacks instead.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}


def _flag(name):
    return os.environ.get(name, "").strip().lower() not in _FALSY


USE_NUMBA = not _flag("EXPSPLINE_DISABLE_NUMBA")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)
    _threads = os.environ.get("EXPSPLINE_THREADS")
    if _threads:
        numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))
else:

    def njit(func):
        return func


BACKEND = "numba" if USE_NUMBA else "numpy"
