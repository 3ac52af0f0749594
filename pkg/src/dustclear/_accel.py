"""Backend selection for the hot kernels.

Set ``DUSTCLEAR_NO_NUMBA=1`` to force the pure-numpy paths (also used
automatically when numba is not importable).
"""
import os

_disabled = os.environ.get("DUSTCLEAR_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def njit(func):
    """``numba.njit(cache=True, nogil=True)`` or a no-op when numba is off."""
    if HAVE_NUMBA:
        return _njit(cache=True, nogil=True)(func)
    return func


BACKEND = "numba" if HAVE_NUMBA else "numpy"
