"""Statistical machinery: KS distances, moment estimates with jackknife
standard errors, and survival-exponent regression.

Everything operates on immutable sorted samples and is pure, so the
functions are safe to call from multiple threads.  There is no p-value
machinery: the consumers are threshold checks against fixed critical
values (e.g. 1.63/sqrt(N) for a one-sample KS at the 1% level).
"""

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EmpiricalSample:
    """A sorted sample of normalized costs plus provenance metadata."""

    values: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or len(values) == 0:
            raise ValueError("EmpiricalSample: need a non-empty 1-d sample")
        if np.any(np.diff(values) < 0.0):
            values = np.sort(values)
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class FitReport:
    """Point estimate with standard error and the data window used."""

    estimate: float
    stderr: float
    window: str

    def __post_init__(self):
        if self.stderr < 0.0:
            raise ValueError("FitReport: stderr must be >= 0")


def ks_one_sample(sample, cdf_fn):
    """Sup distance between the empirical CDF of ``sample`` and the
    model distribution function ``cdf_fn`` (callable, vectorized or
    scalar, monotone on the sample range)."""
    xs = sample.values
    n = len(xs)
    try:
        F = np.asarray(cdf_fn(xs), dtype=float)
        if F.shape != xs.shape:
            raise TypeError
    except TypeError:
        F = np.array([cdf_fn(v) for v in xs], dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def ks_two_sample(a, b):
    """Two-sample sup distance between the empirical CDFs of a and b."""
    xa, xb = a.values, b.values
    allv = np.concatenate([xa, xb])
    allv.sort(kind="mergesort")
    fa = np.searchsorted(xa, allv, side="right") / len(xa)
    fb = np.searchsorted(xb, allv, side="right") / len(xb)
    return float(np.max(np.abs(fa - fb)))


def moment_report(sample, order):
    """Sample mean (order 1) or variance (order 2) with a jackknife
    standard error.  Higher orders are not supported."""
    xs = sample.values
    n = len(xs)
    if order == 1:
        est = float(np.mean(xs))
        if n < 2:
            return FitReport(estimate=est, stderr=0.0, window=f"all {n} values")
        se = float(np.std(xs, ddof=1) / math.sqrt(n))
        return FitReport(estimate=est, stderr=se, window=f"all {n} values")
    if order == 2:
        est = float(np.var(xs, ddof=1)) if n > 1 else 0.0
        if n < 3:
            return FitReport(estimate=est, stderr=0.0, window=f"all {n} values")
        # leave-one-out variances in closed form
        m = np.mean(xs)
        ss = np.sum((xs - m) ** 2)
        loo_ss = ss - (xs - m) ** 2 * n / (n - 1.0)
        loo_var = loo_ss / (n - 2.0)
        se = math.sqrt((n - 1.0) / n * float(np.sum((loo_var - np.mean(loo_var)) ** 2)))
        return FitReport(estimate=est, stderr=se, window=f"all {n} values")
    raise ValueError(f"moment_report: order must be 1 or 2, got {order}")


def survival_exponent(counts, drop_smallest=1):
    """Weighted least-squares fit of -log(survival fraction) vs log(size).

    ``counts`` is a list of (n, survivors, trials) rows over a geometric
    ladder of sizes; at least 4 rows must remain after dropping the
    ``drop_smallest`` smallest sizes (pre-asymptotic bias), and each row
    needs at least 30 survivors.  Weights are the reciprocal binomial
    variances of log(p_hat), i.e. survivors/(1-p); the standard error is
    the usual WLS slope error with those weights taken as known.
    """
    rows = sorted(counts)
    if drop_smallest:
        dropped, rows = rows[:drop_smallest], rows[drop_smallest:]
    else:
        dropped = []
    if len(rows) < 4:
        raise ValueError(
            f"survival_exponent: need >= 4 sizes after dropping {drop_smallest}, "
            f"got {len(rows)}"
        )
    n = np.array([r[0] for r in rows], dtype=float)
    surv = np.array([r[1] for r in rows], dtype=float)
    trials = np.array([r[2] for r in rows], dtype=float)
    if np.any(surv < 30):
        raise ValueError("survival_exponent: need >= 30 survivors at every size")
    p = surv / trials
    # var(log p_hat) ~ (1-p)/(trials*p) = (1-p)/survivors; clamp the
    # p = 1 rows (observed variance zero) at half a count
    one_minus_p = np.maximum(1.0 - p, 0.5 / trials)
    wt = surv / one_minus_p
    X = np.log(n)
    Y = np.log(p)
    xbar = np.sum(wt * X) / np.sum(wt)
    ybar = np.sum(wt * Y) / np.sum(wt)
    sxx = np.sum(wt * (X - xbar) ** 2)
    slope = float(np.sum(wt * (X - xbar) * (Y - ybar)) / sxx)
    stderr = float(1.0 / math.sqrt(sxx))
    window = f"n in [{int(rows[0][0])}, {int(rows[-1][0])}] ({len(rows)} sizes"
    if dropped:
        window += f", dropped {len(dropped)} smallest"
    window += ")"
    return FitReport(estimate=-slope, stderr=stderr, window=window)


def _numify(value):
    if np.ndim(value) == 0:
        return float(value)
    return [float(v) for v in np.asarray(value).ravel()]


def report_row(test, statistic, threshold, passed, meta=None):
    """One validation-report row in the shared JSON shape.

    ``statistic`` and ``threshold`` may be scalars or small sequences
    (e.g. a [low, high] acceptance interval).
    """
    return {
        "test": test,
        "statistic": _numify(statistic),
        "threshold": _numify(threshold),
        "pass": bool(passed),
        "meta": meta or {},
    }
