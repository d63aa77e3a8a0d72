"""Checks for the statistics layer against scipy and synthetic data."""

import numpy as np
import pytest
import scipy.stats as ss
from hypothesis import given, settings
from hypothesis import strategies as st

from dmlaw import stats


def _sample(values):
    return stats.EmpiricalSample(values=np.asarray(values, dtype=float))


def test_sample_is_sorted_and_immutable():
    s = _sample([3.0, 1.0, 2.0])
    assert list(s.values) == [1.0, 2.0, 3.0]
    assert len(s) == 3
    with pytest.raises(ValueError):
        s.values[0] = 0.0
    with pytest.raises(ValueError):
        _sample([])


def test_ks_one_sample_hand_case():
    # two points at 0.25 / 0.75 vs the uniform CDF: sup gap is 1/4
    s = _sample([0.25, 0.75])
    d = stats.ks_one_sample(s, lambda x: np.clip(x, 0.0, 1.0))
    assert d == pytest.approx(0.25, abs=1e-15)


def test_ks_one_sample_matches_scipy(rng):
    xs = rng.standard_exponential(500)
    s = _sample(xs)
    ours = stats.ks_one_sample(s, lambda x: -np.expm1(-x))
    ref = ss.kstest(xs, lambda v: -np.expm1(-v)).statistic
    assert ours == pytest.approx(ref, abs=1e-12)


def test_ks_one_sample_scalar_cdf(rng):
    xs = rng.random(64)
    s = _sample(xs)
    vec = stats.ks_one_sample(s, lambda x: np.clip(x, 0.0, 1.0))
    scalar = stats.ks_one_sample(s, lambda x: min(max(float(x), 0.0), 1.0))
    assert scalar == pytest.approx(vec, abs=1e-15)


def test_ks_two_sample_matches_scipy(rng):
    a = rng.standard_normal(300)
    b = rng.standard_normal(400) + 0.2
    ours = stats.ks_two_sample(_sample(a), _sample(b))
    ref = ss.ks_2samp(a, b, method="asymp").statistic
    assert ours == pytest.approx(ref, abs=1e-12)


def test_ks_two_sample_with_ties():
    a = _sample([1.0, 1.0, 2.0])
    b = _sample([1.0, 2.0, 2.0])
    ref = ss.ks_2samp(a.values, b.values, method="asymp").statistic
    assert stats.ks_two_sample(a, b) == pytest.approx(ref, abs=1e-12)


def test_moment_report(rng):
    xs = rng.standard_normal(5000) * 2.0 + 7.0
    mean = stats.moment_report(_sample(xs), 1)
    var = stats.moment_report(_sample(xs), 2)
    assert mean.estimate == pytest.approx(7.0, abs=5 * mean.stderr)
    assert mean.stderr == pytest.approx(2.0 / np.sqrt(5000), rel=0.1)
    assert var.estimate == pytest.approx(4.0, abs=5 * max(var.stderr, 0.01))
    with pytest.raises(ValueError):
        stats.moment_report(_sample(xs), 3)


@given(expo=st.floats(min_value=0.2, max_value=1.5))
@settings(max_examples=30, deadline=None)
def test_survival_exponent_recovers_exact_power_law(expo):
    # noiseless counts: survivors = trials * n**-expo exactly
    sizes = [64, 128, 256, 512, 1024, 2048]
    rows = [(n, 1e9 * n**-expo, 1e9) for n in sizes]
    fit = stats.survival_exponent(rows)
    assert fit.estimate == pytest.approx(expo, rel=1e-9)


def test_survival_exponent_window_and_validation():
    rows = [(n, 1000, 10000) for n in (64, 128, 256, 512, 1024)]
    fit = stats.survival_exponent(rows)
    assert fit.estimate == pytest.approx(0.0, abs=1e-12)
    assert "dropped 1 smallest" in fit.window
    with pytest.raises(ValueError):
        stats.survival_exponent(rows[:4])  # only 3 left after the drop
    with pytest.raises(ValueError):
        stats.survival_exponent([(n, 5, 10000) for n in (64, 128, 256, 512, 1024)])


def test_report_row_shapes():
    row = stats.report_row("demo", 0.5, 1.0, True, {"k": 1})
    assert row == {
        "test": "demo",
        "statistic": 0.5,
        "threshold": 1.0,
        "pass": True,
        "meta": {"k": 1},
    }
    interval = stats.report_row("demo2", [1.0, 2.0], (0.5, 2.5), False)
    assert interval["statistic"] == [1.0, 2.0]
    assert interval["threshold"] == [0.5, 2.5]
    assert interval["meta"] == {}
