"""Backend selection for the compiled kernels.

Numba is used when it can be imported, unless ``TENRANK_NO_NUMBA`` is set to
a truthy value (``1``, ``true``, ``yes``, ``on``) in which case every kernel
dispatches to its vectorized numpy twin. The flag is read once, at import.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None


def _truthy(value):
    return value.strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = NUMBA_AVAILABLE and not _truthy(os.environ.get("TENRANK_NO_NUMBA", ""))


def njit(func):
    """Compile ``func`` lazily in nopython mode; identity without numba."""
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
