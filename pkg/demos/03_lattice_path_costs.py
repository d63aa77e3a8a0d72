"""Anticipated-rejection sampling of lattice paths, and the cost laws it
obeys.

Three generators, three predictions:

* Motzkin prefixes (restart on going negative): cost/n converges to the
  shifted heavy-tailed law with exponent 1/2 — mean 2, variance 4/3.
* Bracketed paths with a long level step (restart on going negative,
  discard on overshoot): cost/n has the geometric-convolution law at
  p = (2+sqrt2)/4 — mean 8-4*sqrt(2).
* Renewal-type size process: the target is hit with frequency 3/4 for
  unit/double increments at probabilities 2/3 and 1/3.
"""

import math

import numpy as np

from dmlaw import density, samplers, stats

SEED = 20260822


def main():
    n, runs = 2000, 5000

    sample = samplers.cost_distribution("motzkin", n, runs, seed=SEED)
    print(f"motzkin, n={n}, {runs} runs:")
    print(f"  cost/n mean {sample.values.mean():.4f} (limit 2), "
          f"variance {sample.values.var(ddof=1):.4f} (limit {4 / 3:.4f})")
    grid = density.build_density(0.5)
    draws = density.sample_dm(grid, runs, samplers._stream(SEED, 10**6), shifted=True)
    ks = stats.ks_two_sample(sample,
                             stats.EmpiricalSample(values=np.sort(draws), meta={}))
    print(f"  two-sample KS vs {runs} draws from the tabulated law: {ks:.4f}")

    records = [samplers._run_one("schroeder", n, samplers._stream(SEED, r))
               for r in range(runs)]
    mean = np.mean([r.total_ops for r in records]) / n
    overshoots = sum(r.overshoots for r in records)
    hit = len(records) / (len(records) + overshoots)
    print(f"bracketed paths, n={n}, {runs} runs:")
    print(f"  cost/n mean {mean:.4f} (limit {8 - 4 * math.sqrt(2):.4f})")
    print(f"  exact-hit fraction {hit:.4f} (limit {(2 + math.sqrt(2)) / 4:.4f})")

    records = [samplers._run_one("sizeproc", 1000, samplers._stream(SEED, r))
               for r in range(runs)]
    hit = len(records) / sum(r.attempts for r in records)
    print(f"size process, n=1000, {runs} runs:")
    print(f"  exact-hit frequency {hit:.4f} (limit 0.75)")
    dmp = density.sample_dmp(grid, 0.75, runs, samplers._stream(SEED, 2 * 10**6))
    print(f"  geometric-convolution cost mean {dmp.mean():.4f} (limit {8 / 3:.4f})")


if __name__ == "__main__":
    main()
