"""Acceptance criteria 1-15, one test each.

Every test records a single PASS/FAIL line (shown in the terminal summary)
before asserting. Seeds below are experiment config; changing them gives a
fresh, equally valid run.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest
from scipy import integrate

from gbas import harness
from gbas.analysis import (
    chernoff_base,
    chernoff_base_majorant,
    chernoff_tail_bound,
    gamma_tail_exact,
    min_k_bound,
    min_k_exact,
    relative_error_cdf,
    relative_error_density,
    wald_lower_bound,
)
from gbas.estimators import dklr_threshold
from gbas.specfun import GammaParams, gamma_cdf, gamma_quantile, gamma_sf, reg_lower_gamma

from conftest import ACCEPTANCE_LINES, DATA

SEED = 7
N = 10**5


def record(n, ok, text):
    line = f"AC-{n:<2} {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_ac01_gamma_law():
    parts, ok = [], True
    for p, k in [(0.5, 2), (0.1, 5), (0.5, 20)]:
        c = harness.suite_gamma_law(p, k, N, SEED).checks["gamma_law"]
        ok &= c.passed
        parts.append(f"(p={p},k={k}) D={c.statistic:.5f}")
    thr = harness.ks_critical_value(N)
    record(1, ok, f"p/p_hat ~ Gamma(k,k-1): {', '.join(parts)} < {thr:.5f}")


def test_ac02_p_invariance():
    c = harness.suite_p_invariance(0.05, 10, N, SEED, p_alt=0.6).checks["relative_error_two_sample"]
    record(2, c.passed, f"two-sample KS of p_hat/p, p=0.05 vs 0.6: D={c.statistic:.5f} < {c.threshold:.5f}")


def test_ac03_unbiasedness():
    c = harness.suite_unbiasedness(0.3, 5, 10**6, SEED).checks["unbiased"]
    record(3, c.passed, f"|mean(p_hat)-p|={c.statistic:.2e} <= 4 sd/sqrt(N)={c.threshold:.2e}")


def test_ac04_running_time():
    c = harness.suite_running_time(0.25, 10, N, SEED).checks["mean_draws"]
    record(4, c.passed, f"|mean(T)-k/p|={c.statistic:.4f} <= 4 sd/sqrt(N)={c.threshold:.4f}")


def test_ac05_collapsed_matches_literal():
    res = harness.suite_equivalence(0.2, 8, N, SEED)
    a, b = res.checks["p_hat_two_sample"], res.checks["draws_two_sample"]
    record(5, res.passed, f"collapsed vs literal KS: p_hat D={a.statistic:.5f}, T D={b.statistic:.5f} "
                          f"< {a.threshold:.5f}")


def test_ac06_thinning():
    parts, ok = [], True
    for p in (0.1, 0.5, 0.9):
        c = harness.suite_thinning(p, N, SEED).checks["exponential_law"]
        ok &= c.passed
        parts.append(f"p={p} D={c.statistic:.5f}")
    record(6, ok, f"sum of Geo(p) unit exponentials ~ Ex(p): {', '.join(parts)} < {harness.ks_critical_value(N):.5f}")


def test_ac07_coverage():
    covs = {p: harness.coverage_experiment(p, 20, 0.95, N, SEED) for p in (0.3, 0.01)}
    ok = all(abs(c - 0.95) <= 0.003 for c in covs.values())
    record(7, ok, "95% exact CI coverage: " + ", ".join(f"p={p} {c:.5f}" for p, c in covs.items()) + " (tol 0.003)")


def test_ac08_planning():
    pairs = [(e, d) for e in (0.05, 0.1, 0.15, 0.2) for d in (0.25, 0.1, 0.05, 0.01)]
    dominated = all(min_k_exact(e, d).k <= min_k_bound(e, d) for e, d in pairs)
    b1, b2 = min_k_bound(0.1, 0.05), min_k_bound(0.2, 0.25)
    ok = dominated and b1 == 1384 and b2 == 1560
    record(8, ok, f"exact k <= bound k on {len(pairs)} grid points: {dominated}; "
                  f"bound(0.1,0.05)={b1}, bound(0.2,0.25)={b2}")


def test_ac09_guarantee():
    res = harness.suite_guarantee(0.3, 0.2, 0.25, 10**4, SEED)
    c = res.checks["failure"]
    record(9, c.passed, f"k={res.params['k']}: failure fraction {c.statistic:.4f} <= 0.25 + 4 sigma = {c.threshold:.4f}")


def test_ac10_chernoff_and_majorant():
    worst = -math.inf
    for k in (2, 10, 100):
        for g in np.concatenate([np.linspace(0.01, 1.0, 200), np.linspace(1.0, 5.0, 200)]):
            worst = max(worst, gamma_tail_exact(k, g) - chernoff_tail_bound(k, g))
    grid = np.linspace(0.0, 2.0, 10**4)
    viol = max(chernoff_base(g) - chernoff_base_majorant(g) for g in grid)
    ok = worst <= 0.0 and viol <= 1e-15
    record(10, ok, f"max(exact tail - Chernoff bound)={worst:.3e} <= 0; "
                   f"max majorant violation on 1e4 points={viol:.3e} <= 1e-15")


def test_ac11_density():
    errs = []
    for k in (2, 10, 50):
        f = lambda s, k=k: relative_error_density(k, s)
        mass = integrate.quad(f, -1.0, 0.0, epsabs=1e-13, limit=200)[0] + \
            integrate.quad(f, 0.0, np.inf, epsabs=1e-13, limit=200)[0]
        errs.append(abs(mass - 1.0))
    cdf_err = 0.0
    for k in (2, 10, 50):
        for s in (-0.6, -0.2, 0.0, 0.1, 0.5, 2.0):
            q = integrate.quad(lambda t, k=k: relative_error_density(k, t), -1.0, s, epsabs=1e-13, limit=200)[0]
            cdf_err = max(cdf_err, abs(q - relative_error_cdf(k, s)))
    ok = max(errs) <= 1e-8 and cdf_err <= 1e-8
    record(11, ok, f"density mass error {max(errs):.2e}, CDF identity error {cdf_err:.2e} (tol 1e-8)")


def test_ac12_special_functions():
    with open(f"{DATA}/reg_lower_gamma_quad.json") as fh:
        rows = json.load(fh)["rows"]
    err = max(abs(reg_lower_gamma(a, x) - v) for a, x, v in rows)
    rng = np.random.default_rng(12)
    rt = 0.0
    for a, q in zip(np.exp(rng.uniform(np.log(0.3), np.log(2e3), 1000)), rng.uniform(1e-6, 1 - 1e-6, 1000)):
        law = GammaParams(float(a), 1.0)
        x = gamma_quantile(float(q), law)
        back = gamma_cdf(x, law) if q <= 0.5 else 1.0 - gamma_sf(x, law)
        rt = max(rt, abs(back - q))
    ok = len(rows) == 1000 and err <= 1e-10 and rt <= 1e-9
    record(12, ok, f"P(a,x) vs quadrature on {len(rows)} points: max err {err:.2e}; quantile roundtrip {rt:.2e}")


def test_ac13_dklr():
    stop = math.ceil(dklr_threshold(0.5, 0.5))
    res = harness.suite_dklr(0.3, 0.2, 0.1, 10**4, SEED)
    fail, mean_t = res.checks["failure"], res.checks["mean_draws"]
    upsilon = dklr_threshold(0.2, 0.1)
    ok = stop == 25 and fail.passed and mean_t.passed
    record(13, ok, f"stop S={stop}; failure {fail.statistic:.4f} <= 0.1; mean T {mean_t.statistic:.2f} <= "
                   f"ceil(threshold)/p + slack = {mean_t.threshold:.2f} (threshold/p = {upsilon / 0.3:.2f})")


def test_ac14_lower_bound():
    ok, n = True, 0
    for eps in (1e-3, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 3.0):
        for p0 in (1e-6, 1e-4, 0.01, 0.1, 0.3, 0.5):
            for delta in (0.01, 0.05, 0.25, 0.5):
                wb = wald_lower_bound(eps, delta, p0)
                ok &= 0 < wb.simplified <= wb.exact < math.inf
                n += 1
    record(14, ok, f"exact >= simplified > 0, both finite, on {n} (epsilon, p0, delta) points")


def test_ac15_determinism(tmp_path):
    def cli(width, suffix):
        out = tmp_path / f"rep{suffix}.json"
        cmd = [sys.executable, "-m", "gbas", "experiment", "--suite", "replicate", "--estimator", "gbas-literal",
               "--p", "0.2", "--k", "6", "--epsilon", "0.3", "--level", "0.9", "--n", "20000", "--seed", "31",
               "--parallel", str(width), "--out", str(out)]
        assert subprocess.run(cmd, capture_output=True).returncode == 0
        return out.read_bytes()

    files = [cli(1, "a"), cli(1, "b"), cli(8, "c")]
    suites = {harness.suite_equivalence(0.2, 8, 5000, SEED, parallel=w).to_json(include_records=True)
              for w in (1, 3)}
    ok = files[0] == files[1] == files[2] and len(suites) == 1
    record(15, ok, f"replicate report bytes identical across reruns and --parallel 1/8 ({len(files[0])} bytes); "
                   f"suite JSON identical across widths")
