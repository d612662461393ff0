"""Sequential estimators for the mean of a Bernoulli stream.

``gbas_literal`` runs the Gamma Bernoulli approximation scheme draw by draw
on any ``BernoulliSource``: pair every Bernoulli draw with a unit exponential,
stop at the k-th success and return (k - 1) / R, where R is the exponential
mass accumulated so far. ``p / p_hat`` is then Gamma(k, k - 1) whatever p is.

``gbas_collapsed`` simulates the same output law for a known p without
per-draw work: the exponentials attached to each geometric run of failures
sum to a single Ex(p) variable, so R ~ Gamma(k, p) and T is a sum of k
geometrics.
"""

import math
from dataclasses import dataclass

from .distributions import exp_sample, gamma_sample, geometric_sample
from .errors import BudgetExhausted, DomainError

__all__ = [
    "GbasOutcome",
    "DklrOutcome",
    "gbas_literal",
    "gbas_collapsed",
    "dklr_threshold",
    "dklr_estimate",
    "fixed_k_estimate",
]


@dataclass(frozen=True)
class GbasOutcome:
    p_hat: float
    k: int
    r_total: float
    draws: int

    def __post_init__(self):
        if not self.r_total > 0:
            raise DomainError(f"accumulated exponential mass must be positive, got {self.r_total!r}")
        if self.draws < self.k:
            raise DomainError(f"{self.draws} draws cannot produce {self.k} successes")


@dataclass(frozen=True)
class DklrOutcome:
    p_hat: float
    threshold: float
    successes: int
    draws: int


def _check_k(k):
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise DomainError(f"success target k must be an integer >= 2, got {k!r}")
    return int(k)


def _check_budget(budget):
    if budget is not None and budget < 1:
        raise DomainError(f"draw budget must be positive, got {budget!r}")


def gbas_literal(source, rng, k, budget=None):
    """Run GBAS on ``source`` until k successes; exponentials come from ``rng``.

    Raises BudgetExhausted (with the partial S, R, T) if ``budget`` source
    draws pass without reaching k successes.
    """
    k = _check_k(k)
    _check_budget(budget)
    s = 0
    r = 0.0
    t = 0
    while s < k:
        if budget is not None and t >= budget:
            raise BudgetExhausted(
                f"draw budget {budget} exhausted with {s} of {k} successes",
                successes=s, r_total=r, draws=t,
            )
        s += source.draw()
        r += exp_sample(rng, 1.0)
        t += 1
    return GbasOutcome(p_hat=(k - 1) / r, k=k, r_total=r, draws=t)


def gbas_collapsed(rng, p, k):
    """Draw a GBAS outcome for known ``p`` in O(k) work."""
    k = _check_k(k)
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    t = 0
    for _ in range(k):
        t += geometric_sample(rng, p)
    r = gamma_sample(rng, k, p)
    return GbasOutcome(p_hat=(k - 1) / r, k=k, r_total=r, draws=t)


def _check_eps_delta(epsilon, delta):
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta!r}")


def dklr_threshold(epsilon, delta):
    """Success count at which the Dagum-Karp-Luby-Ross stopping rule halts (unrounded)."""
    _check_eps_delta(epsilon, delta)
    return 1.0 + (1.0 + epsilon) * 4.0 * (math.e - 2.0) * math.log(2.0 / delta) / epsilon**2


def dklr_estimate(source, epsilon, delta, budget=None):
    """Stopping-rule estimate S/T, stopping once S reaches ceil(threshold)."""
    threshold = dklr_threshold(epsilon, delta)
    _check_budget(budget)
    target = math.ceil(threshold)
    s = 0
    t = 0
    while s < target:
        if budget is not None and t >= budget:
            raise BudgetExhausted(
                f"draw budget {budget} exhausted with {s} of {target} successes",
                successes=s, draws=t,
            )
        s += source.draw()
        t += 1
    return DklrOutcome(p_hat=s / t, threshold=threshold, successes=s, draws=t)


def fixed_k_estimate(source, n):
    """Sample mean of exactly ``n`` draws."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return sum(source.draw() for _ in range(int(n))) / n
