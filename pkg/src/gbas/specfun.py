"""Special functions: log-gamma, regularized incomplete gamma, Gamma CDF/quantile.

Scalar routines. The private cores are ``jitable`` so the numba kernels can
evaluate CDFs over large sample arrays with the same code. Accuracy targets are ~1e-13 absolute for the
regularized incomplete gamma function over the parameter ranges used for
planning and confidence intervals (shape up to ~1e5).
"""

import math
from dataclasses import dataclass

from ._jit import jitable
from .errors import DomainError

__all__ = [
    "GammaParams",
    "log_gamma",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "gamma_cdf",
    "gamma_sf",
    "gamma_pdf",
    "gamma_quantile",
]

# Lanczos approximation, g = 671/128, 14 terms (coefficients as tabulated in
# Numerical Recipes, 3rd ed.). Relative error below 1e-15 for a > 0.
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

_EPS = 1e-16
_FPMIN = 1e-300


@dataclass(frozen=True)
class GammaParams:
    """Shape/rate parametrization: density b^a t^(a-1) e^(-b t) / Gamma(a)."""

    shape: float
    rate: float

    def __post_init__(self):
        if not (self.shape > 0 and math.isfinite(self.shape)):
            raise DomainError(f"gamma shape must be positive and finite, got {self.shape!r}")
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f"gamma rate must be positive and finite, got {self.rate!r}")

    @property
    def mean(self):
        return self.shape / self.rate


@jitable
def _lanczos(a):
    tmp = a + _LANCZOS_G
    tmp = (a + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = a
    for c in _LANCZOS_COEF:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / a)


@jitable
def _log_gamma(a):
    if a == 1.0 or a == 2.0:
        return 0.0
    if a < 0.5:
        # reflection keeps the series argument >= 0.5
        return math.log(math.pi / math.sin(math.pi * a)) - _lanczos(1.0 - a)
    return _lanczos(a)


def log_gamma(a):
    """Natural log of the gamma function for a > 0."""
    if not a > 0:
        raise DomainError(f"log_gamma requires a > 0, got {a!r}")
    return _log_gamma(float(a))


@jitable
def _max_iter(a):
    return 1000 + int(40.0 * math.sqrt(a))


@jitable
def _stirling_remainder(a):
    # log Gamma(a) - [(a - 1/2) log a - a + log(2 pi)/2], asymptotic; a >= 20
    r = 1.0 / (a * a)
    return (1.0 / 12.0 - r * (1.0 / 360.0 - r * (1.0 / 1260.0 - r / 1680.0))) / a


@jitable
def _log_prefactor(a, x):
    # log of x^a e^-x / Gamma(a)
    if a < 20.0 or x < 0.25 * a:
        return a * math.log(x) - x - _log_gamma(a)
    # large a: the three O(a) terms cancel; expand around x = a instead
    t = (x - a) / a
    return a * (math.log1p(t) - t) + 0.5 * math.log(a / (2.0 * math.pi)) - _stirling_remainder(a)


@jitable
def _series(a, x):
    """Sum of the power series for P(a, x); converges fast for x < a + 1."""
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_max_iter(a)):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(_log_prefactor(a, x))
    raise ArithmeticError("incomplete gamma series did not converge")


@jitable
def _continued_fraction(a, x):
    """Q(a, x) by the modified Lentz method; converges fast for x >= a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _max_iter(a)):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(_log_prefactor(a, x)) * h
    raise ArithmeticError("incomplete gamma continued fraction did not converge")


@jitable
def _clamp(v):
    return min(1.0, max(0.0, v))


@jitable
def _p(a, x):
    # P(a, x) for validated a > 0, x >= 0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _clamp(_series(a, x))
    return _clamp(1.0 - _continued_fraction(a, x))


@jitable
def _q(a, x):
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return _clamp(1.0 - _series(a, x))
    return _clamp(_continued_fraction(a, x))


def _check_ax(a, x):
    if not a > 0:
        raise DomainError(f"incomplete gamma requires a > 0, got a={a!r}")
    if not x >= 0:
        raise DomainError(f"incomplete gamma requires x >= 0, got x={x!r}")


def reg_lower_gamma(a, x):
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a)."""
    _check_ax(a, x)
    return _p(float(a), float(x))


def reg_upper_gamma(a, x):
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), without cancellation."""
    _check_ax(a, x)
    return _q(float(a), float(x))


def gamma_cdf(x, params):
    """P(X <= x) for X ~ Gamma(shape, rate)."""
    if not x >= 0:
        raise DomainError(f"gamma_cdf requires x >= 0, got {x!r}")
    return reg_lower_gamma(params.shape, params.rate * x)


def gamma_sf(x, params):
    """P(X > x) for X ~ Gamma(shape, rate), computed from the upper tail directly."""
    if not x >= 0:
        raise DomainError(f"gamma_sf requires x >= 0, got {x!r}")
    return reg_upper_gamma(params.shape, params.rate * x)


def gamma_pdf(x, params):
    if x < 0:
        return 0.0
    a, b = params.shape, params.rate
    if x == 0.0:
        if a < 1:
            return math.inf
        return b if a == 1 else 0.0
    return math.exp(a * math.log(b) + (a - 1.0) * math.log(x) - b * x - log_gamma(a))


def gamma_quantile(q, params):
    """Smallest x with gamma_cdf(x) >= q, to ~1e-15 relative in x.

    Brackets the root, then takes Newton steps that stay inside the bracket,
    falling back to bisection otherwise. For q > 1/2 the residual is measured
    on the upper tail so that quantiles near 1 keep their precision.
    """
    if not 0.0 <= q < 1.0:
        raise DomainError(f"gamma_quantile requires q in [0, 1), got {q!r}")
    if q == 0.0:
        return 0.0
    a = params.shape
    std = GammaParams(a, 1.0)
    upper = q > 0.5
    target = 1.0 - q if upper else q

    def residual(y):
        # increasing in y
        if upper:
            return target - reg_upper_gamma(a, y)
        return reg_lower_gamma(a, y) - target

    lo = 0.0
    hi = a + 20.0 * math.sqrt(a)
    while residual(hi) < 0.0:
        lo = hi
        hi *= 2.0
    y = min(max(a, lo), hi)
    if not lo < y < hi:
        y = 0.5 * (lo + hi)
    for _ in range(400):
        f = residual(y)
        if f == 0.0:
            break
        if f < 0.0:
            lo = y
        else:
            hi = y
        dens = gamma_pdf(y, std)
        step_ok = False
        if dens > 0.0 and math.isfinite(dens):
            y_new = y - f / dens
            step_ok = lo < y_new < hi
        if not step_ok:
            y_new = 0.5 * (lo + hi)
        if abs(y_new - y) <= 4e-16 * y_new or hi - lo <= 4e-16 * hi:
            y = y_new
            break
        y = y_new
    return y / params.rate
