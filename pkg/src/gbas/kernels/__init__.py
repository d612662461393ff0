"""Replicate kernels with a numba path and a pure-numpy fallback.

The numba path is the default. Set ``GBAS_DISABLE_NUMBA=1`` to force the
numpy implementation (also used automatically when numba is missing). Both
paths consume the same uniforms in the same order, so they agree draw for
draw; floating-point results can differ only in the last bits of ``log``,
``cos`` and friends.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _numpy

_DISABLE = os.environ.get("GBAS_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLE:
        raise ImportError("numba disabled by GBAS_DISABLE_NUMBA")
    from . import _numba
except ImportError:
    _numba = None

BACKENDS = {"numpy": _numpy}
if _numba is not None:
    BACKENDS["numba"] = _numba

BACKEND = "numba" if _numba is not None else "numpy"

NO_BUDGET = np.iinfo(np.int64).max

KERNELS = ("gbas_literal", "gbas_collapsed", "dklr", "fixed_n", "thinned_sum")


def get_backend(name=None):
    name = BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; have {sorted(BACKENDS)}") from None


def run(kernel, key, indices, *args, parallel=1, backend=None):
    """Run ``kernel`` over replicate stream ``indices``, split across threads.

    Results are concatenated in index order, so the output does not depend on
    ``parallel``.
    """
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}")
    fn = getattr(get_backend(backend), kernel)
    k0, k1 = np.uint64(key[0]), np.uint64(key[1])
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    parallel = max(1, int(parallel))
    if parallel == 1 or indices.shape[0] < 2 * parallel:
        return fn(k0, k1, indices, *args)
    pieces = np.array_split(indices, parallel)
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        parts = list(pool.map(lambda ix: fn(k0, k1, ix, *args), pieces))
    if isinstance(parts[0], tuple):
        return tuple(np.concatenate(cols) for cols in zip(*parts))
    return np.concatenate(parts)


def gamma_cdf(x, shape, rate, backend=None):
    """Vectorized Gamma(shape, rate) CDF over an array of nonnegative values."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    return get_backend(backend).gamma_cdf_many(x, float(shape), float(rate))


def gamma_sf(x, shape, rate, backend=None):
    x = np.ascontiguousarray(x, dtype=np.float64)
    return get_backend(backend).gamma_sf_many(x, float(shape), float(rate))
