import math

import numpy as np
import pytest

from gbas import kernels
from gbas.distributions import (
    RngStream,
    SyntheticBernoulli,
    derive_key,
    exp_sample,
    geometric_sample,
)
from gbas.estimators import dklr_estimate, dklr_threshold, fixed_k_estimate, gbas_collapsed, gbas_literal
from gbas.kernels import _numpy

SEED, LANE = 99, 3
KEY = derive_key(SEED, LANE)
IDX = np.arange(64, dtype=np.int64)


def _numpy_philox_uniforms(index, n):
    bg = np.random.Philox(key=np.array(KEY, dtype=np.uint64), counter=np.array([0, 0, index, 0], dtype=np.uint64))
    raw = bg.random_raw(n)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


@pytest.mark.parametrize("index", [0, 1, 7, 2**40])
def test_uniforms_bit_identical_to_numpy_philox(backend, index):
    mod = kernels.get_backend(backend)
    got = mod.uniforms(np.uint64(KEY[0]), np.uint64(KEY[1]), index, 0, 37)
    assert np.array_equal(got, _numpy_philox_uniforms(index, 37))


def test_uniforms_random_access(backend):
    mod = kernels.get_backend(backend)
    full = _numpy_philox_uniforms(5, 40)
    for start in (0, 1, 3, 4, 13):
        assert np.array_equal(mod.uniforms(np.uint64(KEY[0]), np.uint64(KEY[1]), 5, start, 40 - start), full[start:])


def test_philox_blocks_match_numpy_words():
    w = np.stack(_numpy.philox_blocks(KEY[0], KEY[1], np.array([1, 2], dtype=np.uint64),
                                      np.array([4, 4], dtype=np.uint64)), axis=1).ravel()
    bg = np.random.Philox(key=np.array(KEY, dtype=np.uint64), counter=np.array([0, 0, 4, 0], dtype=np.uint64))
    assert np.array_equal(w, bg.random_raw(8))


def _run(name, *args, backend=None, parallel=1, idx=IDX):
    return kernels.run(name, KEY, idx, *args, parallel=parallel, backend=backend)


def test_literal_kernel_matches_scalar_path(backend):
    p, k = 0.3, 6
    p_hat, r, draws, succ, status = _run("gbas_literal", p, k, kernels.NO_BUDGET, backend=backend)
    assert not status.any() and np.all(succ == k)
    for i in IDX[:20]:
        rng = RngStream(SEED, index=int(i), lane=LANE)
        out = gbas_literal(SyntheticBernoulli(rng, p), rng, k)
        assert draws[i] == out.draws
        assert p_hat[i] == pytest.approx(out.p_hat, rel=1e-13)
        assert r[i] == pytest.approx(out.r_total, rel=1e-13)


@pytest.mark.parametrize("k", [8, 50])
def test_collapsed_kernel_matches_scalar_path(backend, k):
    p = 0.2
    p_hat, r, draws = _run("gbas_collapsed", p, k, backend=backend)
    for i in IDX[:20]:
        out = gbas_collapsed(RngStream(SEED, index=int(i), lane=LANE), p, k)
        assert draws[i] == out.draws
        assert p_hat[i] == pytest.approx(out.p_hat, rel=1e-12)


def test_dklr_kernel_matches_scalar_path(backend):
    p, eps, delta = 0.4, 0.5, 0.5
    target = math.ceil(dklr_threshold(eps, delta))
    p_hat, draws, succ, status = _run("dklr", p, target, kernels.NO_BUDGET, backend=backend)
    for i in IDX[:20]:
        out = dklr_estimate(SyntheticBernoulli(RngStream(SEED, index=int(i), lane=LANE), p), eps, delta)
        assert (draws[i], succ[i], p_hat[i]) == (out.draws, out.successes, out.p_hat)


def test_fixed_n_kernel_matches_scalar_path(backend):
    got = _run("fixed_n", 0.35, 50, backend=backend)
    for i in IDX[:20]:
        assert got[i] == fixed_k_estimate(SyntheticBernoulli(RngStream(SEED, index=int(i), lane=LANE), 0.35), 50)


def test_thinned_sum_kernel_matches_scalar_path(backend):
    got = _run("thinned_sum", 0.3, backend=backend)
    for i in IDX[:20]:
        rng = RngStream(SEED, index=int(i), lane=LANE)
        g = geometric_sample(rng, 0.3)
        s = 0.0
        for _ in range(g):
            s += exp_sample(rng)
        assert got[i] == pytest.approx(s, rel=1e-13)


def test_backends_agree():
    if len(kernels.BACKENDS) < 2:
        pytest.skip("numba unavailable")
    idx = np.arange(3000, dtype=np.int64)
    a = _run("gbas_literal", 0.15, 5, kernels.NO_BUDGET, backend="numba", idx=idx)
    b = _run("gbas_literal", 0.15, 5, kernels.NO_BUDGET, backend="numpy", idx=idx)
    assert np.array_equal(a[2], b[2])
    assert np.allclose(a[0], b[0], rtol=1e-13, atol=0)
    c = _run("gbas_collapsed", 0.15, 40, backend="numba", idx=idx)
    d = _run("gbas_collapsed", 0.15, 40, backend="numpy", idx=idx)
    assert np.array_equal(c[2], d[2])
    assert np.allclose(c[0], d[0], rtol=1e-12, atol=0)


def test_budget_status(backend):
    p_hat, r, draws, succ, status = _run("gbas_literal", 0.0, 3, 100, backend=backend, idx=IDX[:4])
    assert np.all(status == 1) and np.all(draws == 100) and np.all(np.isnan(p_hat))
    p_hat, draws, succ, status = _run("dklr", 0.0, 5, 77, backend=backend, idx=IDX[:4])
    assert np.all(status == 1) and np.all(draws == 77)


@pytest.mark.parametrize("parallel", [2, 3, 8])
def test_parallel_width_does_not_change_results(backend, parallel):
    idx = np.arange(500, dtype=np.int64)
    one = _run("gbas_literal", 0.25, 4, kernels.NO_BUDGET, backend=backend, idx=idx)
    many = _run("gbas_literal", 0.25, 4, kernels.NO_BUDGET, backend=backend, idx=idx, parallel=parallel)
    for x, y in zip(one, many):
        assert np.array_equal(x, y, equal_nan=True)


def test_gamma_cdf_kernel(backend):
    from scipy import stats

    x = np.linspace(0.0, 4.0, 501)
    got = kernels.gamma_cdf(x, 5.0, 4.0, backend=backend)
    assert np.max(np.abs(got - stats.gamma(5.0, scale=0.25).cdf(x))) < 1e-13
    sf = kernels.gamma_sf(x, 5.0, 4.0, backend=backend)
    assert np.max(np.abs(got + sf - 1.0)) < 1e-14


def test_unknown_kernel_or_backend():
    with pytest.raises(ValueError):
        kernels.run("nope", KEY, IDX)
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GBAS_DISABLE_NUMBA="1")
    code = ("from gbas import kernels, harness; print(kernels.BACKEND, sorted(kernels.BACKENDS)); "
            "print(harness.suite_thinning(0.5, 2000, seed=1).passed)")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert res.stdout.split("\n")[:2] == ["numpy ['numpy']", "True"]
