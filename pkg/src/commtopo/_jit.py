"""JIT switch for the numeric kernels.

Kernels are written in the numba nopython subset.  Setting the environment
variable ``COMMTOPO_DISABLE_JIT=1`` (or running without numba installed)
executes the very same functions as plain Python over numpy arrays, which
is handy for debugging and is what ``benchmarks/bench_kernels.py`` compares
against.
"""
import os

_DISABLED = os.environ.get("COMMTOPO_DISABLE_JIT", "0").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit
    HAS_JIT = True
except ImportError:
    _njit = None
    HAS_JIT = False


def jit(fn=None, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    kwargs.setdefault("cache", True)

    def wrap(f):
        if not HAS_JIT:
            return f
        return _njit(**kwargs)(f)

    if fn is None:
        return wrap
    return wrap(fn)
