"""Threshold-sum-process engine checks.

Distribution-level agreement with the limit laws is exercised in the
acceptance suite; here we verify mechanics, scaling, determinism, and
the zero atom.
"""

import math

import numpy as np
import pytest

from dmlaw import stats, tsp


def test_pareto_base_survival_and_draws(rng):
    base = tsp.pareto_base(0.5)
    assert base.survival(4.0) == pytest.approx(0.5)
    assert base.survival(1.0) == 1.0
    assert base.survival(0.25) == 1.0  # support starts at 1
    draws = base.draw(rng, 10_000)
    assert draws.min() >= 1.0
    # empirical survival at x=4 within binomial noise of 1/2
    assert np.mean(draws >= 4.0) == pytest.approx(0.5, abs=0.02)


def test_base_validation():
    with pytest.raises(ValueError):
        tsp.BaseDistribution(kind="weird", alpha=0.5)
    with pytest.raises(ValueError):
        tsp.BaseDistribution(kind="pareto", alpha=-1.0)
    with pytest.raises(ValueError):
        tsp.BaseDistribution(kind="user-process", alpha=0.5)


def test_user_process_base(rng):
    # deterministic base worth 2 with survival step at 2
    base = tsp.BaseDistribution(
        kind="user-process",
        alpha=1.0,
        sampler=lambda r, size: np.full(size, 2.0),
        survival_fn=lambda x: 1.0 if x <= 2.0 else 0.0,
    )
    out = tsp.sample_tsp(base, 2.0, rng)
    assert out.y == 0.0 and out.i == 0  # first draw already reaches t


def test_outcome_invariants(rng):
    base = tsp.pareto_base(0.5)
    for _ in range(200):
        out = tsp.sample_tsp(base, 50.0, rng)
        assert out.y >= 0.0
        assert (out.y == 0.0) == (out.i == 0)
        # retained draws are each below t, so the sum is too
        assert out.y < out.i * 50.0 or out.i == 0
    with pytest.raises(ValueError):
        tsp.sample_tsp(base, -1.0, rng)
    with pytest.raises(ValueError):
        tsp.trial_arrays(base, -1.0, 10, seed=0)
    assert tsp.sample_tsp(base, 0.0, rng).i == 0


def test_scaling_factor_regimes():
    t = 1.0e4
    assert tsp.scaling_factor(tsp.pareto_base(0.5), t) == t
    assert tsp.scaling_factor(tsp.pareto_base(1.0), t) == pytest.approx(
        t * math.log(t), rel=1e-15
    )
    base15 = tsp.pareto_base(1.5)
    assert base15.mu == pytest.approx(3.0)
    assert tsp.scaling_factor(base15, t) == pytest.approx(t**1.5 * 3.0, rel=1e-15)
    with pytest.raises(ValueError):
        tsp.scaling_factor(tsp.pareto_base(0.5), 1.0)
    no_mean = tsp.BaseDistribution(kind="pareto", alpha=1.5, mu=None)
    with pytest.raises(ValueError):
        tsp.scaling_factor(no_mean, t)


def test_trials_deterministic_and_seed_sensitive():
    base = tsp.pareto_base(0.5)
    ys1, counts1 = tsp.trial_arrays(base, 100.0, 500, seed=11)
    ys2, counts2 = tsp.trial_arrays(base, 100.0, 500, seed=11)
    ys3, _ = tsp.trial_arrays(base, 100.0, 500, seed=12)
    np.testing.assert_array_equal(ys1, ys2)
    np.testing.assert_array_equal(counts1, counts2)
    assert not np.array_equal(ys1, ys3)
    with pytest.raises(ValueError):
        tsp.trial_arrays(base, 100.0, 0, seed=1)


def test_zero_atom_frequency():
    # P(Y = 0) = P(first draw >= t) = t**-alpha exactly
    base = tsp.pareto_base(0.5)
    ys, counts = tsp.trial_arrays(base, 25.0, 4000, seed=3)
    atom = np.mean(ys == 0.0)
    assert atom == pytest.approx(0.2, abs=0.02)
    np.testing.assert_array_equal(ys == 0.0, counts == 0)


def test_run_trials_metadata():
    base = tsp.pareto_base(1.5)
    sample = tsp.run_trials(base, 50.0, 64, seed=5)
    assert isinstance(sample, stats.EmpiricalSample)
    assert len(sample) == 64
    assert sample.meta["alpha"] == 1.5
    assert sample.meta["tau"] == pytest.approx(tsp.scaling_factor(base, 50.0))
    assert np.all(np.diff(sample.values) >= 0.0)


def test_dump_trials_format(tmp_path):
    path = tmp_path / "trials.csv"
    tsp.dump_trials(path, np.array([0.0, 2.5]), np.array([0, 3]), tau=2.0)
    lines = path.read_text().splitlines()
    assert lines[0] == "trial,y,i,normalized"
    assert lines[1] == "0,0,0,0"
    assert lines[2] == "1,2.5,3,1.25"
