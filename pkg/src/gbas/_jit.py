"""``jitable``: mark scalar helpers callable from both Python and numba kernels."""

try:
    from numba.extending import register_jitable as jitable
except ImportError:  # pragma: no cover - numba is optional

    def jitable(fn):
        return fn
