"""Deterministic analysis of the GBAS output law.

Everything here follows from one fact: for GBAS with success target k,
X = p / p_hat ~ Gamma(k, k - 1) regardless of p. Failure probabilities,
planning, densities and confidence intervals are all Gamma computations.
"""

import math
from dataclasses import asdict, dataclass

from .errors import DomainError
from .specfun import GammaParams, gamma_cdf, gamma_quantile, gamma_sf, log_gamma

__all__ = [
    "Plan",
    "Interval",
    "WaldBound",
    "relative_error_law",
    "failure_probability_exact",
    "min_k_exact",
    "min_k_bound",
    "plan",
    "chernoff_base",
    "chernoff_base_majorant",
    "chernoff_tail_bound",
    "gamma_tail_exact",
    "relative_error_density",
    "relative_error_cdf",
    "exact_ci",
    "wald_lower_bound",
    "BOUND_EPSILON_LIMIT",
]

# the analytic sample-size bound needs 1 - (14/3) eps > 0
BOUND_EPSILON_LIMIT = 3.0 / 14.0


@dataclass(frozen=True)
class Plan:
    epsilon: float
    delta: float
    k: int
    exact_failure: float
    method: str

    def expected_draws(self, p):
        if not 0.0 < p <= 1.0:
            raise DomainError(f"p must lie in (0, 1], got {p!r}")
        return self.k / p

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    level: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi:
            raise DomainError(f"interval endpoints must satisfy 0 <= lo <= hi, got [{self.lo}, {self.hi}]")

    def __contains__(self, p):
        return self.lo <= p <= self.hi

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class WaldBound:
    exact: float
    simplified: float
    omega0: float
    p1: float

    def to_dict(self):
        return asdict(self)


def _check_k(k, minimum=2):
    if isinstance(k, bool) or int(k) != k or k < minimum:
        raise DomainError(f"k must be an integer >= {minimum}, got {k!r}")
    return int(k)


def _check_unit_open(name, v):
    if not 0.0 < v < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {v!r}")


def relative_error_law(k):
    """Distribution of p / p_hat: Gamma(k, k - 1)."""
    k = _check_k(k)
    return GammaParams(float(k), float(k - 1))


def failure_probability_exact(k, epsilon):
    """P(|p_hat/p - 1| > epsilon) for success target k (independent of p)."""
    law = relative_error_law(k)
    _check_unit_open("epsilon", epsilon)
    upper = gamma_sf(1.0 / (1.0 - epsilon), law)
    lower = gamma_cdf(1.0 / (1.0 + epsilon), law)
    return min(1.0, upper + lower)


def min_k_exact(epsilon, delta):
    """Least k >= 2 whose exact failure probability is at most delta.

    Doubling to bracket, bisection inside the bracket, then a downward check
    so the answer holds even if the failure curve wobbles near the root.
    """
    _check_unit_open("epsilon", epsilon)
    _check_unit_open("delta", delta)

    def ok(k):
        return failure_probability_exact(k, epsilon) <= delta

    if ok(2):
        k = 2
    else:
        lo, hi = 2, 4
        while not ok(hi):
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        k = hi
        while k > 2 and ok(k - 1):
            k -= 1
    fail = failure_probability_exact(k, epsilon)
    assert fail <= delta
    return Plan(epsilon=epsilon, delta=delta, k=k, exact_failure=fail, method="exact-search")


def min_k_bound(epsilon, delta):
    """Analytic sample-size bound ceil(2 eps^-2 (1 - 14 eps / 3)^-1 ln(2 / delta))."""
    if not 0.0 < epsilon < BOUND_EPSILON_LIMIT:
        raise DomainError(
            f"the analytic bound needs epsilon in (0, 3/14) so that 1 - (14/3) epsilon > 0; got {epsilon!r}"
        )
    _check_unit_open("delta", delta)
    k = 2.0 / epsilon**2 / (1.0 - (14.0 / 3.0) * epsilon) * math.log(2.0 / delta)
    return max(2, math.ceil(k))


def plan(epsilon, delta, method="exact"):
    if method == "exact":
        return min_k_exact(epsilon, delta)
    if method == "bound":
        k = min_k_bound(epsilon, delta)
        return Plan(epsilon=epsilon, delta=delta, k=k,
                    exact_failure=failure_probability_exact(k, epsilon), method="analytic-bound")
    raise DomainError(f"unknown planning method {method!r}; use 'exact' or 'bound'")


def chernoff_base(gamma):
    """gamma / exp(gamma - 1)."""
    return gamma * math.exp(1.0 - gamma)


def chernoff_base_majorant(gamma):
    """exp(-(gamma-1)^2 / 2 + (gamma-1)^3 / 3); dominates chernoff_base on [0, 2]."""
    b = gamma - 1.0
    return math.exp(-0.5 * b * b + b * b * b / 3.0)


def chernoff_tail_bound(k, gamma):
    """(gamma / e^(gamma-1))^k: bounds P(X >= gamma E X) for gamma >= 1 and
    P(X <= gamma E X) for gamma <= 1, X ~ Gamma(k, k - 1)."""
    k = _check_k(k, minimum=1)
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return math.exp(k * (math.log(gamma) + 1.0 - gamma))


def gamma_tail_exact(k, gamma):
    """The tail that chernoff_tail_bound controls, computed exactly (k >= 2)."""
    law = relative_error_law(k)
    x = gamma * law.mean
    if gamma >= 1.0:
        return gamma_sf(x, law)
    return gamma_cdf(x, law)


def relative_error_density(k, s):
    """Density of p_hat/p - 1 at s; zero for s <= -1."""
    k = _check_k(k)
    if s <= -1.0:
        return 0.0
    t = s + 1.0
    log_f = k * math.log(k - 1) - log_gamma(k) - (k - 1) / t - (k + 1) * math.log(t)
    return math.exp(log_f)


def relative_error_cdf(k, s):
    """P(p_hat/p - 1 <= s) = P(X >= 1/(1+s)), X ~ Gamma(k, k - 1)."""
    law = relative_error_law(k)
    if s <= -1.0:
        return 0.0
    return gamma_sf(1.0 / (1.0 + s), law)


def exact_ci(p_hat, k, level=0.95):
    """Equal-tailed interval with coverage exactly ``level`` for every p."""
    if not (p_hat > 0 and math.isfinite(p_hat)):
        raise DomainError(f"p_hat must be positive and finite, got {p_hat!r}")
    law = relative_error_law(k)
    _check_unit_open("level", level)
    alpha = 1.0 - level
    q_lo = gamma_quantile(alpha / 2.0, law)
    q_hi = gamma_quantile(1.0 - alpha / 2.0, law)
    return Interval(lo=p_hat * q_lo, hi=p_hat * q_hi, level=level)


def wald_lower_bound(epsilon, delta, p0):
    """Lower bounds on E[T] for any (epsilon, delta) scheme valid for p <= 1/2.

    ``exact`` uses the Bernoulli log-likelihood drift omega0 between p0 and
    p1 = p0 / (1 + epsilon)^2 in the sequential-test bound; ``simplified``
    replaces omega0 by its lower bound -5 p0 epsilon^2 / (1 + 2 epsilon).
    """
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise DomainError(f"epsilon must be positive (epsilon = 0 makes the hypotheses coincide), got {epsilon!r}")
    _check_unit_open("delta", delta)
    if not 0.0 < p0 <= 0.5:
        raise DomainError(f"p0 must lie in (0, 1/2], got {p0!r}")
    p1 = p0 / (1.0 + epsilon) ** 2
    omega0 = p0 * (-2.0 * math.log1p(epsilon)) + (1.0 - p0) * math.log1p((p0 - p1) / (1.0 - p0))
    if not omega0 < 0.0:
        raise DomainError(f"degenerate hypotheses: omega0 = {omega0!r}")
    log_term = math.log((2.0 - delta) / delta)
    exact = -(1.0 - delta) * log_term / omega0
    simplified = (1.0 + 2.0 * epsilon) * (1.0 - delta) * log_term / (5.0 * p0 * epsilon**2)
    return WaldBound(exact=exact, simplified=simplified, omega0=omega0, p1=p1)
