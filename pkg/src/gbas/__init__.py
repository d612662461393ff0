"""Gamma Bernoulli approximation scheme (GBAS): sequential Bernoulli-mean estimation driven by exponential clocks."""

from .analysis import (
    Interval,
    Plan,
    WaldBound,
    chernoff_tail_bound,
    exact_ci,
    failure_probability_exact,
    min_k_bound,
    min_k_exact,
    plan,
    relative_error_cdf,
    relative_error_density,
    relative_error_law,
    wald_lower_bound,
)
from .distributions import (
    BernoulliSource,
    LineBernoulliSource,
    RngStream,
    ScriptedBernoulli,
    SyntheticBernoulli,
    UnitIntervalBernoulli,
    open_source,
)
from .errors import BudgetExhausted, DataError, DomainError, GbasError
from .estimators import (
    DklrOutcome,
    GbasOutcome,
    dklr_estimate,
    dklr_threshold,
    fixed_k_estimate,
    gbas_collapsed,
    gbas_literal,
)
from .harness import ExperimentConfig, ExperimentReport, run_replications
from .specfun import GammaParams, gamma_cdf, gamma_quantile, reg_lower_gamma, reg_upper_gamma

__version__ = "0.1.0"
