"""Backend switch for the integer-table kernels.

Set ``LAMBDA_ORDERS_NUMBA=0`` to force the pure numpy path.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("LAMBDA_ORDERS_NUMBA", "1") != "0"


def njit(fn):
    if numba is None:  # pragma: no cover
        return fn
    return numba.njit(cache=True)(fn)


def backend():
    return "numba" if USE_NUMBA else "numpy"
