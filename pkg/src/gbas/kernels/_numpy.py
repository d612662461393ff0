"""Pure-numpy replicate kernels.

Same contracts and draw order as ``_numba``, vectorized across replicates.
Uniforms are random-access in (stream index, position), so each replicate's
stream can be materialized in chunks without a per-replicate cursor.
"""

import math

import numpy as np

from ..specfun import _p, _q

_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_S11 = np.uint64(11)
_TWO_M53 = 2.0 ** -53
_MASK64 = (1 << 64) - 1

# elements per working matrix
_CAP = 1 << 21
_ROW_BATCH = 8192


def _round_keys(k0, k1):
    keys = []
    k0, k1 = int(k0), int(k1)
    for _ in range(10):
        keys.append((np.uint64(k0), np.uint64(k1)))
        k0 = (k0 + 0x9E3779B97F4A7C15) & _MASK64
        k1 = (k1 + 0xBB67AE8584CAA73B) & _MASK64
    return keys


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


def philox_blocks(k0, k1, c0, c2):
    """Philox4x64-10 on counters (c0, 0, c2, 0); returns the four output words."""
    c0 = np.asarray(c0, dtype=np.uint64)
    c2 = np.asarray(c2, dtype=np.uint64)
    c1 = np.zeros_like(c0)
    c3 = np.zeros_like(c0)
    for rk0, rk1 in _round_keys(k0, k1):
        hi0, lo0 = _mulhilo(_M0, c0)
        hi1, lo1 = _mulhilo(_M1, c2)
        c0, c1, c2, c3 = hi1 ^ c1 ^ rk0, lo1, hi0 ^ c3 ^ rk1, lo0
    return c0, c1, c2, c3


def uniform_matrix(k0, k1, index, start, m):
    """Uniforms at positions start[i] .. start[i] + m - 1 of stream index[i]."""
    index = np.asarray(index, dtype=np.int64)
    start = np.asarray(start, dtype=np.int64)
    b0 = start >> 2
    nblocks = int((((start + m - 1) >> 2) - b0).max()) + 1
    blocks = b0[:, None] + np.arange(nblocks, dtype=np.int64)
    c2 = np.broadcast_to(index[:, None], blocks.shape).astype(np.uint64)
    words = np.stack(philox_blocks(k0, k1, (blocks + 1).astype(np.uint64), c2), axis=2)
    words = words.reshape(index.shape[0], 4 * nblocks)
    offs = (start & 3)[:, None] + np.arange(m, dtype=np.int64)
    raw = np.take_along_axis(words, offs, axis=1)
    return ((raw >> _S11).astype(np.float64) + 0.5) * _TWO_M53


def uniforms(k0, k1, index, start, n):
    return uniform_matrix(k0, k1, [index], [start], n)[0]


def _row_batches(n, width=1):
    size = max(1, min(_ROW_BATCH, _CAP // max(1, width)))
    for lo in range(0, n, size):
        yield slice(lo, min(n, lo + size))


def _geometric(u, p):
    if p >= 1.0:
        return np.ones(u.shape, dtype=np.int64)
    return np.maximum(1, np.ceil(np.log(u) / math.log1p(-p))).astype(np.int64)


def _chunk_len(remaining_mean, n_active, budget_left):
    c = int(min(remaining_mean * 1.2 + 8, 1e12))
    c = min(c, max(1, _CAP // (2 * n_active)))
    return max(1, min(c, budget_left))


def gbas_literal(k0, k1, indices, p, k, budget):
    n = indices.shape[0]
    p_hat = np.full(n, np.nan)
    r_out = np.zeros(n)
    draws = np.zeros(n, dtype=np.int64)
    succ = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    for sl in _row_batches(n):
        idx = indices[sl]
        S = np.zeros(idx.shape[0], dtype=np.int64)
        R = np.zeros(idx.shape[0])
        T = np.zeros(idx.shape[0], dtype=np.int64)
        st = np.zeros(idx.shape[0], dtype=np.int8)
        active = np.arange(idx.shape[0])
        while active.size:
            over = T[active] >= budget
            if over.any():
                st[active[over]] = 1
                active = active[~over]
                if not active.size:
                    break
            rem = (k - S[active]).max() / p if p > 0 else np.inf
            chunk = _chunk_len(rem, active.size, int(min(budget - T[active].min(), 1 << 40)))
            u = uniform_matrix(k0, k1, idx[active], 2 * T[active], 2 * chunk)
            cs = S[active, None] + np.cumsum(u[:, 0::2] < p, axis=1)
            a = -np.log(u[:, 1::2])
            racc = np.cumsum(np.concatenate([R[active, None], a], axis=1), axis=1)[:, 1:]
            hit = cs >= k
            fin = hit.any(axis=1)
            last = np.where(fin, hit.argmax(axis=1), chunk - 1)
            rows = np.arange(active.size)
            S[active] = cs[rows, last]
            R[active] = racc[rows, last]
            T[active] += last + 1
            active = active[~fin]
        ok = st == 0
        ph = np.full(idx.shape[0], np.nan)
        ph[ok] = (k - 1) / R[ok]
        p_hat[sl], r_out[sl], draws[sl], succ[sl], status[sl] = ph, R, T, S, st
    return p_hat, r_out, draws, succ, status


def _gamma_int(k0, k1, idx, start, shape, rate):
    n = idx.shape[0]
    if shape <= 32:
        e = -np.log(uniform_matrix(k0, k1, idx, start, shape))
        s = np.zeros(n)
        for j in range(shape):
            s = s + e[:, j]
        return s / rate
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    pos = np.array(start, dtype=np.int64)
    active = np.arange(n)
    while active.size:
        u = uniform_matrix(k0, k1, idx[active], pos[active], 3)
        u1, u2, u3 = u[:, 0], u[:, 1], u[:, 2]
        z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * math.pi * u2)
        v = 1.0 + c * z
        pos_ok = v > 0.0
        v = np.where(pos_ok, v, 1.0)
        v = v * v * v
        accept = u3 < 1.0 - 0.0331 * (z * z) * (z * z)
        accept |= np.log(u3) < 0.5 * z * z + d * (1.0 - v + np.log(v))
        accept &= pos_ok
        out[active[accept]] = d * v[accept] / rate
        pos[active] += 3
        active = active[~accept]
    return out


def gbas_collapsed(k0, k1, indices, p, k):
    n = indices.shape[0]
    p_hat = np.empty(n)
    r_out = np.empty(n)
    draws = np.empty(n, dtype=np.int64)
    for sl in _row_batches(n, width=k):
        idx = indices[sl]
        zero = np.zeros(idx.shape[0], dtype=np.int64)
        T = _geometric(uniform_matrix(k0, k1, idx, zero, k), p).sum(axis=1)
        R = _gamma_int(k0, k1, idx, zero + k, k, p)
        p_hat[sl] = (k - 1) / R
        r_out[sl] = R
        draws[sl] = T
    return p_hat, r_out, draws


def dklr(k0, k1, indices, p, target, budget):
    n = indices.shape[0]
    p_hat = np.full(n, np.nan)
    draws = np.zeros(n, dtype=np.int64)
    succ = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    for sl in _row_batches(n):
        idx = indices[sl]
        S = np.zeros(idx.shape[0], dtype=np.int64)
        T = np.zeros(idx.shape[0], dtype=np.int64)
        st = np.zeros(idx.shape[0], dtype=np.int8)
        active = np.arange(idx.shape[0])
        while active.size:
            over = T[active] >= budget
            if over.any():
                st[active[over]] = 1
                active = active[~over]
                if not active.size:
                    break
            rem = (target - S[active]).max() / p if p > 0 else np.inf
            chunk = 2 * _chunk_len(rem, active.size, int(min(budget - T[active].min(), 1 << 40)))
            chunk = min(chunk, int(min(budget - T[active].min(), 1 << 40)))
            u = uniform_matrix(k0, k1, idx[active], T[active], chunk)
            cs = S[active, None] + np.cumsum(u < p, axis=1)
            hit = cs >= target
            fin = hit.any(axis=1)
            last = np.where(fin, hit.argmax(axis=1), chunk - 1)
            rows = np.arange(active.size)
            S[active] = cs[rows, last]
            T[active] += last + 1
            active = active[~fin]
        ok = st == 0
        ph = np.full(idx.shape[0], np.nan)
        ph[ok] = S[ok] / T[ok]
        p_hat[sl], draws[sl], succ[sl], status[sl] = ph, T, S, st
    return p_hat, draws, succ, status


def fixed_n(k0, k1, indices, p, n_draws):
    n = indices.shape[0]
    p_hat = np.empty(n)
    for sl in _row_batches(n):
        idx = indices[sl]
        s = np.zeros(idx.shape[0], dtype=np.int64)
        width = max(1, _CAP // idx.shape[0])
        for col in range(0, n_draws, width):
            m = min(width, n_draws - col)
            start = np.full(idx.shape[0], col, dtype=np.int64)
            s += (uniform_matrix(k0, k1, idx, start, m) < p).sum(axis=1)
        p_hat[sl] = s / n_draws
    return p_hat


def thinned_sum(k0, k1, indices, p):
    n = indices.shape[0]
    out = np.empty(n)
    for sl in _row_batches(n):
        idx = indices[sl]
        zero = np.zeros(idx.shape[0], dtype=np.int64)
        g = _geometric(uniform_matrix(k0, k1, idx, zero, 1)[:, 0], p)
        s = np.zeros(idx.shape[0])
        col = 0
        active = np.arange(idx.shape[0])
        while active.size:
            m = max(1, min(int(g[active].max()) - col, _CAP // active.size))
            e = -np.log(uniform_matrix(k0, k1, idx[active], zero[active] + 1 + col, m))
            e[np.arange(m)[None, :] >= (g[active] - col)[:, None]] = 0.0
            s[active] = np.cumsum(np.concatenate([s[active, None], e], axis=1), axis=1)[:, -1]
            col += m
            active = active[g[active] > col]
        out[sl] = s
    return out


def gamma_cdf_many(x, shape, rate):
    return np.array([_p(shape, rate * float(v)) for v in x])


def gamma_sf_many(x, shape, rate):
    return np.array([_q(shape, rate * float(v)) for v in x])
