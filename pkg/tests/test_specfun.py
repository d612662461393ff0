import json
import math
import os

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from gbas.errors import DomainError
from gbas.specfun import (
    GammaParams,
    gamma_cdf,
    gamma_pdf,
    gamma_quantile,
    gamma_sf,
    log_gamma,
    reg_lower_gamma,
    reg_upper_gamma,
)

from conftest import DATA


def _fixture_rows():
    with open(os.path.join(DATA, "reg_lower_gamma_quad.json")) as fh:
        return json.load(fh)["rows"]


def test_reg_lower_gamma_matches_quadrature_oracle():
    rows = _fixture_rows()
    assert len(rows) == 1000
    err = max(abs(reg_lower_gamma(a, x) - v) for a, x, v in rows)
    assert err < 1e-12


def test_upper_is_complement_on_oracle_points():
    for a, x, v in _fixture_rows()[:200]:
        assert abs(reg_upper_gamma(a, x) - (1.0 - v)) < 1e-12


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 3.5, 10.0, 171.0, 1e3, 1e5, 1e6])
def test_log_gamma_against_mpmath(a):
    ref = float(mp.loggamma(a))
    assert abs(log_gamma(a) - ref) <= 4e-15 * max(1.0, abs(ref))


def test_log_gamma_exact_at_one_and_two():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0


def test_log_gamma_integers_are_log_factorials():
    for n in range(1, 60):
        assert math.isclose(log_gamma(n + 1), math.lgamma(n + 1), rel_tol=1e-14, abs_tol=1e-14)


def test_exponential_special_case():
    for x in [1e-8, 0.1, 1.0, 5.0, 30.0]:
        assert math.isclose(reg_lower_gamma(1.0, x), -math.expm1(-x), rel_tol=1e-14)
        assert math.isclose(reg_upper_gamma(1.0, x), math.exp(-x), rel_tol=1e-13)


def test_endpoints():
    assert reg_lower_gamma(3.0, 0.0) == 0.0
    assert reg_upper_gamma(3.0, 0.0) == 1.0
    assert reg_lower_gamma(3.0, math.inf) == 1.0


def test_deep_upper_tail_keeps_relative_precision():
    # Q(10, 200) ~ 1e-70: computing 1 - P would give 0
    ref = float(mp.gammainc(10, 200, mp.inf, regularized=True))
    assert math.isclose(reg_upper_gamma(10.0, 200.0), ref, rel_tol=1e-12)


@pytest.mark.parametrize("a,x", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5), (math.nan, 1.0)])
def test_domain_errors(a, x):
    with pytest.raises(DomainError):
        reg_lower_gamma(a, x)


def test_gamma_params_validation():
    with pytest.raises(DomainError):
        GammaParams(0.0, 1.0)
    with pytest.raises(DomainError):
        GammaParams(1.0, -2.0)
    assert GammaParams(5.0, 4.0).mean == 1.25


def test_gamma_pdf_matches_scipy():
    for a, b in [(0.5, 2.0), (1.0, 1.0), (5.0, 4.0), (100.0, 99.0)]:
        for x in [0.01, 0.5, 1.0, 2.0]:
            ref = math.exp(a * math.log(b) + (a - 1) * math.log(x) - b * x - special.gammaln(a))
            assert math.isclose(gamma_pdf(x, GammaParams(a, b)), ref, rel_tol=1e-12)


@pytest.mark.parametrize("shape,rate", [(2.0, 1.0), (5.0, 4.0), (20.0, 19.0), (0.7, 3.0), (1000.0, 999.0)])
@pytest.mark.parametrize("q", [1e-12, 1e-6, 0.025, 0.3, 0.5, 0.9, 0.975, 1 - 1e-9])
def test_quantile_roundtrip(shape, rate, q):
    law = GammaParams(shape, rate)
    x = gamma_quantile(q, law)
    back = gamma_cdf(x, law) if q <= 0.5 else 1.0 - gamma_sf(x, law)
    assert abs(back - q) < 1e-9


def test_quantile_against_scipy():
    for shape in [2.0, 5.0, 33.0, 385.0]:
        law = GammaParams(shape, shape - 1.0)
        for q in [0.025, 0.5, 0.975]:
            ref = special.gammaincinv(shape, q) / (shape - 1.0)
            assert math.isclose(gamma_quantile(q, law), ref, rel_tol=1e-12)


def test_quantile_domain():
    law = GammaParams(2.0, 1.0)
    assert gamma_quantile(0.0, law) == 0.0
    for q in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            gamma_quantile(q, law)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0.05, 5e3), x=st.floats(0.0, 1e4))
def test_lower_plus_upper_is_one(a, x):
    assert abs(reg_lower_gamma(a, x) + reg_upper_gamma(a, x) - 1.0) < 1e-13


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0.05, 2e3), x=st.floats(0.0, 4e3), y=st.floats(0.0, 4e3))
def test_lower_is_monotone_in_x(a, x, y):
    lo, hi = sorted((x, y))
    assert reg_lower_gamma(a, lo) <= reg_lower_gamma(a, hi) + 1e-15


@settings(max_examples=150, deadline=None)
@given(a=st.floats(0.3, 1e3), q=st.floats(1e-10, 1 - 1e-10))
def test_quantile_roundtrip_property(a, q):
    law = GammaParams(a, 1.0)
    x = gamma_quantile(q, law)
    back = gamma_cdf(x, law) if q <= 0.5 else 1.0 - gamma_sf(x, law)
    assert abs(back - q) < 1e-9


def test_random_points_against_scipy():
    rng = np.random.default_rng(3)
    a = np.exp(rng.uniform(np.log(0.1), np.log(1e4), 2000))
    x = a * np.exp(rng.uniform(np.log(0.01), np.log(5.0), 2000))
    ours = np.array([reg_lower_gamma(ai, xi) for ai, xi in zip(a, x)])
    assert np.max(np.abs(ours - special.gammainc(a, x))) < 1e-12
