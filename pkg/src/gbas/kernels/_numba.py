"""numba-compiled replicate kernels.

Every kernel walks replicates one at a time; replicate ``indices[i]`` reads
uniforms from the Philox4x64-10 stream with counter ``(block + 1, 0, index, 0)``
under the shared key, in the same draw order as the scalar routines in
``gbas.distributions`` and ``gbas.estimators``.
"""

import math

import numpy as np
from numba import njit

from ..specfun import _p, _q

_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_W0 = np.uint64(0x9E3779B97F4A7C15)
_W1 = np.uint64(0xBB67AE8584CAA73B)
_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_S11 = np.uint64(11)
_TWO_M53 = 2.0 ** -53

_OPTS = dict(cache=True, nogil=True)
# on-disk caching does not track edits to jitable code imported from other
# modules, so kernels that inline specfun are compiled per process
_OPTS_NOCACHE = dict(cache=False, nogil=True)


@njit(**_OPTS)
def _mulhilo(a, b):
    lo = a * b
    a0 = a & _LO32
    a1 = a >> _S32
    b0 = b & _LO32
    b1 = b >> _S32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    p11 = a1 * b1
    mid = (p00 >> _S32) + (p01 & _LO32) + (p10 & _LO32)
    hi = p11 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)
    return hi, lo


@njit(**_OPTS)
def _fill_block(buf, k0, k1, index, block):
    c0 = np.uint64(block + 1)
    c1 = np.uint64(0)
    c2 = np.uint64(index)
    c3 = np.uint64(0)
    for r in range(10):
        if r > 0:
            k0 = k0 + _W0
            k1 = k1 + _W1
        hi0, lo0 = _mulhilo(_M0, c0)
        hi1, lo1 = _mulhilo(_M1, c2)
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    buf[0] = c0
    buf[1] = c1
    buf[2] = c2
    buf[3] = c3


@njit(**_OPTS)
def _next_uniform(buf, cur, k0, k1):
    # cur = [stream index, next position, cached block (-1 when empty)]
    pos = cur[1]
    blk = pos >> 2
    if blk != cur[2]:
        _fill_block(buf, k0, k1, cur[0], blk)
        cur[2] = blk
    cur[1] = pos + 1
    return (float(buf[pos & 3] >> _S11) + 0.5) * _TWO_M53


@njit(**_OPTS)
def _cursor(index):
    cur = np.empty(3, dtype=np.int64)
    cur[0] = index
    cur[1] = 0
    cur[2] = -1
    return cur


@njit(**_OPTS)
def uniforms(k0, k1, index, start, n):
    buf = np.empty(4, dtype=np.uint64)
    cur = _cursor(index)
    cur[1] = start
    out = np.empty(n)
    for i in range(n):
        out[i] = _next_uniform(buf, cur, k0, k1)
    return out


@njit(**_OPTS)
def _geometric(u, p, log1mp):
    if p >= 1.0:
        return 1
    g = math.ceil(math.log(u) / log1mp)
    return max(1, int(g))


@njit(**_OPTS)
def _gamma_int(buf, cur, k0, k1, shape, rate):
    # shape is an integer >= 1
    if shape <= 32:
        s = 0.0
        for _ in range(shape):
            s += -math.log(_next_uniform(buf, cur, k0, k1))
        return s / rate
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        u1 = _next_uniform(buf, cur, k0, k1)
        u2 = _next_uniform(buf, cur, k0, k1)
        u3 = _next_uniform(buf, cur, k0, k1)
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        v = 1.0 + c * z
        if v <= 0.0:
            continue
        v = v * v * v
        if u3 < 1.0 - 0.0331 * (z * z) * (z * z):
            return d * v / rate
        if math.log(u3) < 0.5 * z * z + d * (1.0 - v + math.log(v)):
            return d * v / rate


@njit(**_OPTS)
def gbas_literal(k0, k1, indices, p, k, budget):
    n = indices.shape[0]
    p_hat = np.empty(n)
    r_out = np.empty(n)
    draws = np.empty(n, dtype=np.int64)
    succ = np.empty(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    buf = np.empty(4, dtype=np.uint64)
    for i in range(n):
        cur = _cursor(indices[i])
        s = 0
        r = 0.0
        t = 0
        while s < k:
            if t >= budget:
                status[i] = 1
                break
            if _next_uniform(buf, cur, k0, k1) < p:
                s += 1
            r += -math.log(_next_uniform(buf, cur, k0, k1))
            t += 1
        p_hat[i] = (k - 1) / r if status[i] == 0 else np.nan
        r_out[i] = r
        draws[i] = t
        succ[i] = s
    return p_hat, r_out, draws, succ, status


@njit(**_OPTS)
def gbas_collapsed(k0, k1, indices, p, k):
    n = indices.shape[0]
    p_hat = np.empty(n)
    r_out = np.empty(n)
    draws = np.empty(n, dtype=np.int64)
    buf = np.empty(4, dtype=np.uint64)
    log1mp = math.log1p(-p) if p < 1.0 else -np.inf
    for i in range(n):
        cur = _cursor(indices[i])
        t = 0
        for _ in range(k):
            t += _geometric(_next_uniform(buf, cur, k0, k1), p, log1mp)
        r = _gamma_int(buf, cur, k0, k1, k, p)
        p_hat[i] = (k - 1) / r
        r_out[i] = r
        draws[i] = t
    return p_hat, r_out, draws


@njit(**_OPTS)
def dklr(k0, k1, indices, p, target, budget):
    n = indices.shape[0]
    p_hat = np.empty(n)
    draws = np.empty(n, dtype=np.int64)
    succ = np.empty(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    buf = np.empty(4, dtype=np.uint64)
    for i in range(n):
        cur = _cursor(indices[i])
        s = 0
        t = 0
        while s < target:
            if t >= budget:
                status[i] = 1
                break
            if _next_uniform(buf, cur, k0, k1) < p:
                s += 1
            t += 1
        p_hat[i] = s / t if status[i] == 0 else np.nan
        draws[i] = t
        succ[i] = s
    return p_hat, draws, succ, status


@njit(**_OPTS)
def fixed_n(k0, k1, indices, p, n_draws):
    n = indices.shape[0]
    p_hat = np.empty(n)
    buf = np.empty(4, dtype=np.uint64)
    for i in range(n):
        cur = _cursor(indices[i])
        s = 0
        for _ in range(n_draws):
            if _next_uniform(buf, cur, k0, k1) < p:
                s += 1
        p_hat[i] = s / n_draws
    return p_hat


@njit(**_OPTS)
def thinned_sum(k0, k1, indices, p):
    n = indices.shape[0]
    out = np.empty(n)
    buf = np.empty(4, dtype=np.uint64)
    log1mp = math.log1p(-p) if p < 1.0 else -np.inf
    for i in range(n):
        cur = _cursor(indices[i])
        g = _geometric(_next_uniform(buf, cur, k0, k1), p, log1mp)
        s = 0.0
        for _ in range(g):
            s += -math.log(_next_uniform(buf, cur, k0, k1))
        out[i] = s
    return out


@njit(**_OPTS_NOCACHE)
def gamma_cdf_many(x, shape, rate):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _p(shape, rate * x[i])
    return out


@njit(**_OPTS_NOCACHE)
def gamma_sf_many(x, shape, rate):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _q(shape, rate * x[i])
    return out
