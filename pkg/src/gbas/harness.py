"""Reproducible Monte Carlo experiments on synthetic Bernoulli streams.

Replicate ``i`` of an experiment always reads stream ``(seed, i)`` on the
experiment's lane, so a report is a pure function of its config: thread
count and kernel scheduling do not change a single bit of it.

Two samples compared against each other (p-invariance, literal vs collapsed,
GBAS vs DKLR) are drawn on different lanes so that they are independent.
"""

import csv
import json
import math
import os
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import kernels
from .analysis import exact_ci, failure_probability_exact, min_k_bound, min_k_exact
from .distributions import derive_key
from .errors import BudgetExhausted, DomainError
from .estimators import dklr_threshold

__all__ = [
    "ESTIMATORS",
    "FORMATS",
    "ExperimentConfig",
    "ExperimentReport",
    "Check",
    "SuiteResult",
    "run_replications",
    "aggregate",
    "ks_statistic",
    "ks_two_sample",
    "kolmogorov_sf",
    "ks_critical_value",
    "coverage_fraction",
    "coverage_experiment",
    "compare_estimators",
    "SUITES",
    "run_suite",
    "dumps",
    "write_report",
    "read_records_csv",
]

ESTIMATORS = ("gbas-literal", "gbas-collapsed", "dklr", "fixed-k")
FORMATS = ("json", "csv")
KS_MIN_SAMPLES = 1000


def _fmt_float(x):
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".eEn"):
        s += ".0"
    return s


def dumps(obj, indent=2, _level=0):
    """JSON text with floats written to 17 significant digits (exact round trip)."""
    pad = "\n" + " " * (indent * (_level + 1)) if indent else ""
    end = "\n" + " " * (indent * _level) if indent else ""
    sep = "," + pad if indent else ","
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (json.dumps(str(k)) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items())
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # short scalar rows stay on one line
        if all(not isinstance(v, (dict, list, tuple)) for v in obj) and len(obj) <= 8:
            return "[" + ", ".join(dumps(v, 0) for v in obj) + "]"
        return "[" + pad + sep.join(dumps(v, indent, _level + 1) for v in obj) + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One batch of replicates of one estimator on a synthetic Bern(p) stream.

    ``k`` drives the GBAS estimators, ``epsilon``/``delta`` drive DKLR (and,
    for GBAS, the failure-fraction check), ``n`` is the fixed-k sample size.
    ``level`` adds an exact-CI coverage check. ``parallel`` only affects
    scheduling and is left out of the report.
    """

    estimator: str
    p: float
    replicates: int
    seed: int
    k: int = None
    epsilon: float = None
    delta: float = None
    n: int = None
    level: float = None
    budget: int = None
    lane: int = 0
    alpha: float = 1e-3
    parallel: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.estimator not in ESTIMATORS:
            raise DomainError(f"unknown estimator {self.estimator!r}; choose from {', '.join(ESTIMATORS)}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")
        _require_int("replicates", self.replicates, 1)
        _require_int("seed", self.seed, 0)
        _require_int("lane", self.lane, 0)
        _require_int("parallel", self.parallel, 1)
        if self.budget is not None:
            _require_int("budget", self.budget, 1)
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.estimator == "fixed-k":
            if not 0.0 <= self.p <= 1.0:
                raise DomainError(f"p must lie in [0, 1], got {self.p!r}")
            _require_int("n", self.n, 1)
        else:
            if not 0.0 <= self.p <= 1.0 or (self.p == 0.0 and self.budget is None):
                raise DomainError(f"sequential estimators need p in (0, 1] (or a budget), got {self.p!r}")
        if self.estimator.startswith("gbas"):
            _require_int("k", self.k, 2)
            if self.estimator == "gbas-collapsed" and self.p == 0.0:
                raise DomainError("the collapsed sampler needs p > 0")
        if self.estimator == "dklr" and (self.epsilon is None or self.delta is None):
            raise DomainError("dklr needs epsilon and delta")
        for name in ("epsilon", "delta", "level"):
            v = getattr(self, name)
            if v is not None and not 0.0 < v < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {v!r}")

    def echo(self):
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        del d["parallel"]
        return d


def _require_int(name, v, minimum):
    if v is None or isinstance(v, bool) or int(v) != v or v < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {v!r}")


@dataclass(frozen=True)
class Check:
    statistic: float
    threshold: float
    passed: bool
    relation: str = "<="

    def to_dict(self):
        return asdict(self)


def _check(statistic, threshold):
    statistic, threshold = float(statistic), float(threshold)
    return Check(statistic, threshold, bool(statistic <= threshold))


def _summary(x):
    n = len(x)
    vals = [float(v) for v in x]
    mean = math.fsum(vals) / n
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in vals) / (n - 1)) if n > 1 else None
    lo, hi = min(vals), max(vals)
    if np.issubdtype(np.asarray(x).dtype, np.integer):
        lo, hi = int(lo), int(hi)
    return {"mean": mean, "sd": sd, "min": lo, "max": hi}


def aggregate(p_hat, draws):
    """Aggregates of the per-replicate records; exactly rounded sums, so
    recomputation from emitted records reproduces them bit for bit."""
    return {"replicates": len(p_hat), "p_hat": _summary(p_hat), "draws": _summary(draws)}


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    p_hat: np.ndarray
    draws: np.ndarray
    aggregates: dict
    checks: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def records(self):
        return [
            {"replicate_index": i, "p_hat": float(p), "draws": int(t)}
            for i, (p, t) in enumerate(zip(self.p_hat, self.draws))
        ]

    def to_dict(self, include_records=True):
        d = {
            "config": self.config.echo(),
            "aggregates": self.aggregates,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
            "passed": self.passed,
            "flags": list(self.flags),
        }
        if include_records:
            d["records"] = self.records()
        return d

    def to_json(self, include_records=True):
        return dumps(self.to_dict(include_records)) + "\n"


# ---------------------------------------------------------------- statistics


def ks_statistic(samples, cdf):
    """Kolmogorov-Smirnov distance between the empirical CDF of ``samples`` and ``cdf``.

    ``cdf`` is evaluated once on the sorted sample array (a scalar function
    is mapped element by element if it cannot take arrays).
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.shape[0]
    if n == 0:
        raise DomainError("KS statistic needs at least one sample")
    try:
        F = np.asarray(cdf(x), dtype=np.float64)
    except (TypeError, ValueError):
        F = None
    if F is None or F.shape != x.shape:
        F = np.array([cdf(float(v)) for v in x])
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - F)
    d_minus = np.max(F - (i - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


def ks_two_sample(samples_a, samples_b):
    """Sup distance between two empirical CDFs."""
    a = np.sort(np.asarray(samples_a, dtype=np.float64))
    b = np.sort(np.asarray(samples_b, dtype=np.float64))
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise DomainError("two-sample KS needs nonempty samples")
    z = np.concatenate([a, b])
    fa = np.searchsorted(a, z, side="right") / a.shape[0]
    fb = np.searchsorted(b, z, side="right") / b.shape[0]
    return float(np.max(np.abs(fa - fb)))


def kolmogorov_sf(x):
    """P(K > x) for the limiting Kolmogorov distribution."""
    if x <= 0.0:
        return 1.0
    if x < 0.2:
        # Jacobi-transformed series converges here; the alternating one does not
        s = sum(math.exp(-((2 * j - 1) ** 2) * math.pi**2 / (8.0 * x * x)) for j in range(1, 20))
        return 1.0 - math.sqrt(2.0 * math.pi) / x * s
    return min(1.0, 2.0 * sum((-1) ** (j - 1) * math.exp(-2.0 * j * j * x * x) for j in range(1, 101)))


def ks_critical_value(n, alpha=1e-3, m=None):
    """Asymptotic KS rejection threshold at significance ``alpha``.

    One-sample for size ``n``; two-sample when ``m`` is given.
    About 1.95 / sqrt(n) at alpha = 1e-3.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    lo, hi = 0.1, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if kolmogorov_sf(mid) > alpha:
            lo = mid
        else:
            hi = mid
    c = 0.5 * (lo + hi)
    if m is None:
        return c / math.sqrt(n)
    return c * math.sqrt((n + m) / (n * m))


# ---------------------------------------------------------------- replication


def _raise_budget(status, draws, succ, config):
    bad = np.flatnonzero(status)
    if bad.size:
        i = int(bad[0])
        raise BudgetExhausted(
            f"replicate {i}: draw budget {config.budget} exhausted with {int(succ[i])} successes",
            successes=int(succ[i]), draws=int(draws[i]), replicate=i,
        )


def _simulate(config, backend=None):
    key = derive_key(config.seed, config.lane)
    idx = np.arange(config.replicates, dtype=np.int64)
    budget = kernels.NO_BUDGET if config.budget is None else int(config.budget)
    run = dict(parallel=config.parallel, backend=backend)
    p = float(config.p)
    if config.estimator == "gbas-literal":
        p_hat, _, draws, succ, status = kernels.run("gbas_literal", key, idx, p, int(config.k), budget, **run)
        _raise_budget(status, draws, succ, config)
    elif config.estimator == "gbas-collapsed":
        p_hat, _, draws = kernels.run("gbas_collapsed", key, idx, p, int(config.k), **run)
    elif config.estimator == "dklr":
        target = math.ceil(dklr_threshold(config.epsilon, config.delta))
        p_hat, draws, succ, status = kernels.run("dklr", key, idx, p, int(target), budget, **run)
        _raise_budget(status, draws, succ, config)
    else:
        p_hat = kernels.run("fixed_n", key, idx, p, int(config.n), **run)
        draws = np.full(config.replicates, int(config.n), dtype=np.int64)
    return p_hat, draws


def _mean_check(x, target, mean, sd):
    n = len(x)
    if sd is None or n < 2:
        return None
    return _check(abs(mean - target), 4.0 * sd / math.sqrt(n))


def _binomial_slack(rate, n):
    return 4.0 * math.sqrt(rate * (1.0 - rate) / n)


def _gbas_checks(config, p_hat, draws, agg, checks, flags):
    k, p, n = config.k, config.p, config.replicates
    if k < 3:
        flags.append("k < 3: p_hat has infinite variance, sd-based summaries are unreliable")
    rel = p / p_hat
    if n >= KS_MIN_SAMPLES:
        d = ks_statistic(rel, lambda x: kernels.gamma_cdf(x, k, k - 1))
        checks["gamma_law"] = _check(d, ks_critical_value(n, config.alpha))
    if k >= 3:
        c = _mean_check(p_hat, p, agg["p_hat"]["mean"], agg["p_hat"]["sd"])
        if c is not None:
            checks["unbiased"] = c
    c = _mean_check(draws, k / p, agg["draws"]["mean"], agg["draws"]["sd"])
    if c is not None:
        checks["mean_draws"] = c
    if config.epsilon is not None:
        frac = float(np.mean(np.abs(p_hat / p - 1.0) > config.epsilon))
        bound = config.delta if config.delta is not None else failure_probability_exact(k, config.epsilon)
        checks["failure"] = _check(frac, bound + _binomial_slack(bound, n))
    if config.level is not None:
        cov = coverage_fraction(p_hat, k, config.level, p)
        checks["coverage"] = _check(abs(cov - config.level), _binomial_slack(config.level, n))


def _dklr_checks(config, p_hat, draws, agg, checks):
    p, n = config.p, config.replicates
    frac = float(np.mean(np.abs(p_hat / p - 1.0) > config.epsilon))
    checks["failure"] = _check(frac, config.delta)
    sd = agg["draws"]["sd"]
    if sd is not None:
        # stopping happens at the integer success count ceil(threshold)
        target = math.ceil(dklr_threshold(config.epsilon, config.delta))
        checks["mean_draws"] = _check(agg["draws"]["mean"], target / p + 4.0 * sd / math.sqrt(n))


def run_replications(config, backend=None):
    """Run ``config.replicates`` independent replicates and summarize them."""
    p_hat, draws = _simulate(config, backend)
    agg = aggregate(p_hat, draws)
    checks, flags = {}, []
    if config.estimator.startswith("gbas"):
        _gbas_checks(config, p_hat, draws, agg, checks, flags)
    elif config.estimator == "dklr":
        _dklr_checks(config, p_hat, draws, agg, checks)
    else:
        c = _mean_check(p_hat, config.p, agg["p_hat"]["mean"], agg["p_hat"]["sd"])
        if c is not None and agg["p_hat"]["sd"] > 0:
            checks["unbiased"] = c
    return ExperimentReport(config=config, p_hat=p_hat, draws=draws, aggregates=agg, checks=checks, flags=flags)


def coverage_fraction(p_hats, k, level, p):
    """Fraction of estimates whose exact interval contains ``p``."""
    unit = exact_ci(1.0, k, level)
    p_hats = np.asarray(p_hats, dtype=np.float64)
    inside = (p_hats * unit.lo <= p) & (p <= p_hats * unit.hi)
    return float(np.mean(inside))


def coverage_experiment(p, k, level, replicates, seed, estimator="gbas-literal", parallel=1, backend=None):
    """Empirical coverage of the exact interval over fresh GBAS replicates."""
    config = ExperimentConfig(estimator=estimator, p=p, replicates=replicates, seed=seed,
                              k=k, level=level, parallel=parallel)
    p_hat, _ = _simulate(config, backend)
    return coverage_fraction(p_hat, k, level, p)


# ---------------------------------------------------------------- suites


@dataclass
class SuiteResult:
    name: str
    params: dict
    checks: dict
    reports: list = field(default_factory=list)
    table: list = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def to_dict(self, include_records=False):
        d = {
            "suite": self.name,
            "params": self.params,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
            "passed": self.passed,
        }
        if self.table is not None:
            d["table"] = self.table
        d["reports"] = [r.to_dict(include_records) for r in self.reports]
        return d

    def to_json(self, include_records=False):
        return dumps(self.to_dict(include_records)) + "\n"


def _need_ks(n):
    if n < KS_MIN_SAMPLES:
        raise DomainError(f"KS suites need at least {KS_MIN_SAMPLES} replicates, got {n}")


def suite_gamma_law(p, k, n, seed, estimator="gbas-literal", alpha=1e-3, parallel=1, backend=None):
    _need_ks(n)
    rep = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, alpha=alpha, parallel=parallel), backend)
    return SuiteResult("gamma-law", dict(p=p, k=k, n=n, seed=seed, estimator=estimator),
                       {"gamma_law": rep.checks["gamma_law"]}, [rep])


def suite_p_invariance(p, k, n, seed, p_alt=0.6, estimator="gbas-literal", alpha=1e-3, parallel=1, backend=None):
    _need_ks(n)
    a = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, lane=0, alpha=alpha, parallel=parallel), backend)
    b = run_replications(ExperimentConfig(estimator, p_alt, n, seed, k=k, lane=1, alpha=alpha, parallel=parallel),
                         backend)
    d = ks_two_sample(a.p_hat / p, b.p_hat / p_alt)
    return SuiteResult("p-invariance", dict(p=p, p_alt=p_alt, k=k, n=n, seed=seed, estimator=estimator),
                       {"relative_error_two_sample": _check(d, ks_critical_value(n, alpha, m=n))}, [a, b])


def suite_unbiasedness(p, k, n, seed, estimator="gbas-literal", parallel=1, backend=None):
    if k < 3:
        raise DomainError("unbiasedness check needs k >= 3 (finite variance)")
    rep = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, parallel=parallel), backend)
    return SuiteResult("unbiasedness", dict(p=p, k=k, n=n, seed=seed, estimator=estimator),
                       {"unbiased": rep.checks["unbiased"]}, [rep])


def suite_running_time(p, k, n, seed, estimator="gbas-literal", parallel=1, backend=None):
    rep = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, parallel=parallel), backend)
    return SuiteResult("running-time", dict(p=p, k=k, n=n, seed=seed, estimator=estimator),
                       {"mean_draws": rep.checks["mean_draws"]}, [rep])


def suite_equivalence(p, k, n, seed, alpha=1e-3, parallel=1, backend=None):
    _need_ks(n)
    lit = run_replications(ExperimentConfig("gbas-literal", p, n, seed, k=k, lane=0, alpha=alpha,
                                            parallel=parallel), backend)
    col = run_replications(ExperimentConfig("gbas-collapsed", p, n, seed, k=k, lane=1, alpha=alpha,
                                            parallel=parallel), backend)
    thr = ks_critical_value(n, alpha, m=n)
    checks = {
        "p_hat_two_sample": _check(ks_two_sample(lit.p_hat, col.p_hat), thr),
        "draws_two_sample": _check(ks_two_sample(lit.draws, col.draws), thr),
    }
    return SuiteResult("collapsed-vs-literal", dict(p=p, k=k, n=n, seed=seed), checks, [lit, col])


def thinned_sums(p, n, seed, lane=0, parallel=1, backend=None):
    """Sums of Geo(p)-many unit exponentials, one per replicate."""
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    key = derive_key(seed, lane)
    return kernels.run("thinned_sum", key, np.arange(n, dtype=np.int64), float(p),
                       parallel=parallel, backend=backend)


def suite_thinning(p, n, seed, alpha=1e-3, parallel=1, backend=None):
    _need_ks(n)
    sums = thinned_sums(p, n, seed, parallel=parallel, backend=backend)
    d = ks_statistic(sums, lambda x: -np.expm1(-p * x))
    return SuiteResult("thinning", dict(p=p, n=n, seed=seed),
                       {"exponential_law": _check(d, ks_critical_value(n, alpha))})


def suite_coverage(p, k, n, seed, level=0.95, estimator="gbas-literal", parallel=1, backend=None):
    rep = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, level=level, parallel=parallel), backend)
    return SuiteResult("coverage", dict(p=p, k=k, level=level, n=n, seed=seed, estimator=estimator),
                       {"coverage": rep.checks["coverage"]}, [rep])


def suite_guarantee(p, epsilon, delta, n, seed, estimator="gbas-literal", parallel=1, backend=None):
    k = min_k_exact(epsilon, delta).k
    rep = run_replications(ExperimentConfig(estimator, p, n, seed, k=k, epsilon=epsilon, delta=delta,
                                            parallel=parallel), backend)
    return SuiteResult("guarantee", dict(p=p, epsilon=epsilon, delta=delta, k=k, n=n, seed=seed),
                       {"failure": rep.checks["failure"]}, [rep])


def suite_dklr(p, epsilon, delta, n, seed, parallel=1, backend=None):
    rep = run_replications(ExperimentConfig("dklr", p, n, seed, epsilon=epsilon, delta=delta,
                                            parallel=parallel), backend)
    return SuiteResult("dklr", dict(p=p, epsilon=epsilon, delta=delta, n=n, seed=seed), dict(rep.checks), [rep])


def compare_estimators(p, epsilon, delta, n, seed, estimator="gbas-literal", parallel=1, backend=None):
    """GBAS (planned by exact search) against DKLR at the same (epsilon, delta, p)."""
    k_bound = min_k_bound(epsilon, delta)
    plan = min_k_exact(epsilon, delta)
    gb = run_replications(ExperimentConfig(estimator, p, n, seed, k=plan.k, epsilon=epsilon, delta=delta,
                                           lane=0, parallel=parallel), backend)
    dk = run_replications(ExperimentConfig("dklr", p, n, seed, epsilon=epsilon, delta=delta,
                                           lane=1, parallel=parallel), backend)
    threshold = dklr_threshold(epsilon, delta)
    slack = _binomial_slack(delta, n)
    g_fail = gb.checks["failure"].statistic
    d_fail = dk.checks["failure"].statistic
    table = [
        {"estimator": "gbas", "k": plan.k, "k_bound": k_bound, "exact_failure": plan.exact_failure,
         "mean_draws": gb.aggregates["draws"]["mean"], "expected_draws": plan.k / p, "failure_fraction": g_fail},
        {"estimator": "dklr", "threshold": threshold, "stop_successes": math.ceil(threshold),
         "mean_draws": dk.aggregates["draws"]["mean"], "expected_draws": math.ceil(threshold) / p,
         "failure_fraction": d_fail},
    ]
    checks = {
        "gbas_failure": _check(g_fail, delta + slack),
        "dklr_failure": _check(d_fail, delta + slack),
        "gbas_mean_draws": gb.checks["mean_draws"],
    }
    res = SuiteResult("compare", dict(p=p, epsilon=epsilon, delta=delta, n=n, seed=seed, estimator=estimator),
                      checks, [gb, dk], table)
    res.params["draw_ratio"] = dk.aggregates["draws"]["mean"] / gb.aggregates["draws"]["mean"]
    return res


SUITES = {
    "gamma-law": suite_gamma_law,
    "p-invariance": suite_p_invariance,
    "unbiasedness": suite_unbiasedness,
    "running-time": suite_running_time,
    "collapsed-vs-literal": suite_equivalence,
    "thinning": suite_thinning,
    "coverage": suite_coverage,
    "guarantee": suite_guarantee,
    "dklr": suite_dklr,
    "compare": compare_estimators,
}


def run_suite(name, **params):
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**params)


# ---------------------------------------------------------------- output


def write_report(report, path, output_format="json", include_records=True):
    """Write a report; returns the list of files written.

    JSON: one document. CSV: per-replicate rows in ``path`` plus a
    ``<stem>.summary.json`` sidecar holding config, aggregates and checks.
    """
    if output_format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(include_records))
        return [path]
    if output_format != "csv":
        raise DomainError(f"unknown output format {output_format!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["replicate_index", "p_hat", "draws"])
        for i, (p, t) in enumerate(zip(report.p_hat, report.draws)):
            w.writerow([i, _fmt_float(float(p)), int(t)])
    stem = os.path.splitext(path)[0]
    side = stem + ".summary.json"
    with open(side, "w", encoding="utf-8") as fh:
        fh.write(dumps(report.to_dict(include_records=False)) + "\n")
    return [path, side]


def read_records_csv(path):
    """(p_hat, draws) arrays back from a records CSV."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    p_hat = np.array([float(r["p_hat"]) for r in rows])
    draws = np.array([int(r["draws"]) for r in rows], dtype=np.int64)
    return p_hat, draws
