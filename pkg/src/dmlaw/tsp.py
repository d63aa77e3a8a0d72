"""Threshold sum process: draw i.i.d. nonnegative costs X_0, X_1, ...
until the first draw reaches a threshold t, and return the sum of the
strictly earlier draws.

The number of failed draws is geometric with parameter F(t) (the base
law's survival function at t).  When F(x) ~ c * x**(-alpha), the
normalized sum converges in distribution as t grows:

    alpha < 1:  Y_t / t                    ->  Darling-Mandelbrot law
                                               (unshifted: the successful
                                               draw is excluded)
    alpha = 1:  Y_t / (t * log t)          ->  Exp(1)
    alpha > 1:  Y_t / (t**alpha * mu / c)  ->  Exp(1)

The engine is deterministic for a fixed seed: trial i uses the
counter-based stream keyed by (seed, i), so results do not depend on
scheduling or batching.
"""

import math
from dataclasses import dataclass

import numpy as np

from dmlaw.stats import EmpiricalSample

# abort a single run after this many draws: the base's survival at t has
# almost surely underflowed to zero (contract guard, not a tuning knob)
_RUNAWAY_DRAWS = 10**10
_MAX_BLOCK = 1 << 17


@dataclass(frozen=True)
class BaseDistribution:
    """Base law fed to the threshold sum process.

    ``kind`` is 'pareto' (exact survival min(1, x**-alpha), sampled as
    (1-U)**(-1/alpha)) or 'user-process' (bring your own ``sampler`` and
    ``survival_fn``).  ``c`` is the tail constant in F(x) ~ c*x**-alpha
    and ``mu`` the mean, required for the alpha > 1 scaling.
    """

    kind: str
    alpha: float
    c: float = 1.0
    mu: float | None = None
    sampler: object = None
    survival_fn: object = None

    def __post_init__(self):
        if self.kind not in ("pareto", "user-process"):
            raise ValueError(f"BaseDistribution: unknown kind {self.kind!r}")
        if not self.alpha > 0.0:
            raise ValueError(f"BaseDistribution: need alpha > 0, got {self.alpha}")
        if self.kind == "user-process" and self.sampler is None:
            raise ValueError("BaseDistribution: user-process kind needs a sampler")

    def survival(self, x):
        """Survival function F(x) = P(X >= x)."""
        if self.kind == "pareto":
            return min(1.0, float(x) ** (-self.alpha)) if x > 0 else 1.0
        if self.survival_fn is None:
            raise ValueError("BaseDistribution: no survival function provided")
        return self.survival_fn(x)

    def draw(self, rng, size):
        """Vector of ``size`` independent draws."""
        if self.kind == "pareto":
            return (1.0 - rng.random(size)) ** (-1.0 / self.alpha)
        return np.asarray(self.sampler(rng, size), dtype=float)


def pareto_base(alpha):
    """Pareto base with exact survival min(1, x**-alpha).

    For alpha > 1 the mean alpha/(alpha-1) is filled in so the scaling
    factor is available; the tail constant is exactly 1.
    """
    mu = alpha / (alpha - 1.0) if alpha > 1.0 else None
    return BaseDistribution(kind="pareto", alpha=alpha, c=1.0, mu=mu)


@dataclass(frozen=True)
class TspOutcome:
    """One run of the threshold sum process: the sum y of the failed
    draws, their count i, and the threshold t used."""

    y: float
    i: int
    t: float

    def __post_init__(self):
        if self.y < 0.0:
            raise ValueError("TspOutcome: y must be >= 0")
        if (self.y == 0.0) != (self.i == 0):
            raise ValueError("TspOutcome: y == 0 exactly when i == 0")


def _block_size(base, t):
    F_t = base.survival(t)
    if F_t <= 0.0 or F_t < 1e-5:
        return _MAX_BLOCK
    return min(max(64, int(4.0 / F_t)), _MAX_BLOCK)


def _one_run(base, t, rng, block):
    """(sum, count, max retained draw) of a single threshold run."""
    y = 0.0
    count = 0
    biggest = 0.0
    while True:
        draws = base.draw(rng, block)
        hits = np.nonzero(draws >= t)[0]
        if hits.size:
            j = int(hits[0])
            if j:
                y += float(draws[:j].sum())
                biggest = max(biggest, float(draws[:j].max()))
                count += j
            return y, count, biggest
        y += float(draws.sum())
        biggest = max(biggest, float(draws.max()))
        count += block
        if count > _RUNAWAY_DRAWS:
            raise RuntimeError(
                f"sample_tsp: {count} draws without reaching t={t}; "
                "the base law's survival has likely underflowed"
            )


def sample_tsp(base, t, rng):
    """Run the threshold sum process once and return a TspOutcome."""
    if t < 0.0:
        raise ValueError(f"sample_tsp: need t >= 0, got {t}")
    if t == 0.0:
        return TspOutcome(y=0.0, i=0, t=0.0)
    y, count, biggest = _one_run(base, t, rng, _block_size(base, t))
    assert biggest < t, "threshold sum process retained a draw >= t"
    return TspOutcome(y=y, i=count, t=float(t))


def scaling_factor(base, t):
    """Normalization tau for the regime of the base's tail exponent:
    t for alpha < 1, t*log(t) at alpha = 1, t**alpha * mu / c above."""
    if not t > 1.0:
        raise ValueError(f"scaling_factor: need t > 1, got {t}")
    a = base.alpha
    if a < 1.0:
        return float(t)
    if a == 1.0:
        return float(t) * math.log(t)
    if base.mu is None:
        raise ValueError("scaling_factor: alpha > 1 requires the base mean mu")
    return float(t) ** a * base.mu / base.c


def trial_arrays(base, t, n_trials, seed):
    """n_trials independent runs; returns (sums, counts) arrays.

    Trial i draws from the counter-based stream keyed by (seed, i), so
    the output is reproducible regardless of batching or parallelism.
    """
    if t < 0.0:
        raise ValueError(f"trial_arrays: need t >= 0, got {t}")
    if n_trials < 1:
        raise ValueError(f"trial_arrays: need n_trials >= 1, got {n_trials}")
    ys = np.empty(n_trials)
    counts = np.empty(n_trials, dtype=np.int64)
    block = _block_size(base, t)
    for trial in range(n_trials):
        rng = np.random.Generator(
            np.random.Philox(key=np.array([seed, trial], dtype=np.uint64))
        )
        y, count, biggest = _one_run(base, t, rng, block)
        assert biggest < t
        ys[trial] = y
        counts[trial] = count
    return ys, counts


def run_trials(base, t, n_trials, seed):
    """EmpiricalSample of Y_t / tau over n_trials independent runs."""
    ys, _counts = trial_arrays(base, t, n_trials, seed)
    tau = scaling_factor(base, t)
    return EmpiricalSample(
        values=np.sort(ys / tau),
        meta={
            "source": f"tsp-{base.kind}",
            "alpha": base.alpha,
            "t": t,
            "n_runs": n_trials,
            "seed": seed,
            "tau": tau,
        },
    )


def dump_trials(path, ys, counts, tau):
    """Write per-trial results as CSV: ``trial,y,i,normalized``."""
    with open(path, "w") as fh:
        fh.write("trial,y,i,normalized\n")
        for trial, (y, i) in enumerate(zip(ys, counts)):
            fh.write(f"{trial},{y:.17g},{int(i)},{y / tau:.17g}\n")
