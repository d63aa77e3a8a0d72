"""Sampler mechanics: path validity, cost accounting, determinism, and
the batch drivers.  Distributional limits are covered by the acceptance
suite; everything here is cheap.
"""

import math

import numpy as np
import pytest

from dmlaw import samplers


def _gen(seed, run=0):
    return samplers._stream(seed, run)


# --- models ------------------------------------------------------------------


def test_walk_model_validation():
    with pytest.raises(ValueError):
        samplers.WalkModel(
            name="bad", steps=((1, 0.6, 1), (-1, 0.6, 1)), constraint="", target=""
        )
    with pytest.raises(ValueError):
        samplers.WalkModel(
            name="bad", steps=((1, 0.5, 1), (-1, 0.5, 0)), constraint="", target=""
        )


def test_motzkin_model_drift_free():
    assert samplers.motzkin_model().drift() == pytest.approx(0.0)
    assert samplers.motzkin_model((2, 2, 3)).drift() == pytest.approx(0.0)
    assert samplers.SCHROEDER_MODEL.drift() == pytest.approx(0.0)


# --- Motzkin -----------------------------------------------------------------


def _motzkin_heights(path, u, d):
    steps = np.where(path < u, 1, np.where(path < u + d, -1, 0))
    return np.cumsum(steps)


def test_motzkin_prefix_is_valid_path():
    path, rec = samplers.motzkin_prefix(300, _gen(1))
    assert len(path) == 300
    assert path.min() >= 0 and path.max() <= 2
    heights = _motzkin_heights(path, 1, 1)
    assert heights.min() >= 0
    # rejected attempts stop early, so each costs between 1 and n steps
    assert 300 + (rec.attempts - 1) <= rec.total_ops <= 300 * rec.attempts
    assert rec.target == 300 and rec.overshoots == 0


def test_motzkin_prefix_colored():
    path, rec = samplers.motzkin_prefix(200, _gen(2), colors=(2, 2, 3))
    assert path.max() <= 6
    assert _motzkin_heights(path, 2, 2).min() >= 0
    with pytest.raises(ValueError):
        samplers.motzkin_prefix(200, _gen(2), colors=(2, 1, 1))  # u != d drifts


def test_motzkin_prefix_deterministic():
    p1, r1 = samplers.motzkin_prefix(150, _gen(3))
    p2, r2 = samplers.motzkin_prefix(150, _gen(3))
    np.testing.assert_array_equal(p1, p2)
    assert r1 == r2


def test_motzkin_census_counts_valid_prefixes():
    counts = np.zeros(27, dtype=np.int64)
    samplers._motzkin_census(_gen(4), 3, 5000, counts)
    assert counts.sum() == 5000
    # codes with a fall before any rise are impossible
    base3 = [np.base_repr(c, 3).zfill(3) for c in range(27)]
    impossible = [i for i, s in enumerate(base3) if _bad_prefix(s)]
    assert counts[impossible].sum() == 0
    assert np.count_nonzero(counts) == 13


def _bad_prefix(code):
    height = 0
    for ch in code:
        if ch == "0":
            height += 1
        elif ch == "1":
            height -= 1
            if height < 0:
                return True
    return False


# --- Schroeder ---------------------------------------------------------------


def test_schroeder_prefix_structure():
    path, rec = samplers.schroeder_prefix(400, _gen(5))
    lengths = np.where(path == 2, 2, 1)
    assert lengths.sum() == 400  # exact hit, long steps included
    heights = np.cumsum(np.where(path == 0, 1, np.where(path == 1, -1, 0)))
    assert heights.min() >= 0
    assert rec.overshoots >= 0
    assert rec.total_ops >= 400


def test_schroeder_prefix_deterministic():
    p1, r1 = samplers.schroeder_prefix(100, _gen(6))
    p2, r2 = samplers.schroeder_prefix(100, _gen(6))
    np.testing.assert_array_equal(p1, p2)
    assert r1 == r2


# --- size process -------------------------------------------------------------


def test_size_process_deterministic_increment_always_hits():
    hit, rec = samplers.size_process(((1, 1.0),), 500, "fail-on-pass", _gen(7))
    assert hit is True
    assert rec.total_ops == 500
    assert rec.attempts == 1


def test_size_process_validation():
    rng = _gen(8)
    with pytest.raises(ValueError):
        samplers.size_process(((-1, 0.6), (1, 0.4)), 100, "fail-on-pass", rng)  # drift < 0
    with pytest.raises(ValueError):
        samplers.size_process(((2, 1.0),), 100, "fail-on-pass", rng)  # gcd 2 misses odd n
    with pytest.raises(ValueError):
        samplers.size_process(((1, 1.0),), 100, "bogus-policy", rng)


def test_size_process_counts_backtracking_ops():
    # increments -1/+2: ops charge |increment|, so ops >= net displacement
    hit, rec = samplers.size_process(
        ((-1, 1.0 / 3.0), (2, 2.0 / 3.0)), 50, "restart-at-sqrt", _gen(9)
    )
    assert rec.total_ops >= 50 or not hit
    assert rec.attempts == 1


def test_size_process_restart_policy_not_worse():
    # with backtracking increments the restart policy can only help
    incs = ((-1, 1.0 / 3.0), (2, 2.0 / 3.0))
    hits_fail = sum(
        samplers.size_process(incs, 200, "fail-on-pass", _gen(10, r))[0]
        for r in range(2000)
    )
    hits_restart = sum(
        samplers.size_process(incs, 200, "restart-at-sqrt", _gen(10, r))[0]
        for r in range(2000)
    )
    assert 0 < hits_fail < 2000
    assert hits_restart >= hits_fail


# --- quarter plane -------------------------------------------------------------


@pytest.mark.parametrize("model", ["gessel", "kreweras3"])
def test_quarter_plane_path_stays_inside(model):
    steps = {
        "gessel": [(-1, -1), (-1, 0), (1, 1), (1, 0)],
        "kreweras3": [(0, -1), (-1, 0), (1, 1)],
    }[model]
    path, rec = samplers.quarter_plane_walk(model, 250, _gen(11))
    assert len(path) == 250
    pos = np.array([(0, 0)] + [steps[c] for c in path]).cumsum(axis=0)
    assert pos.min() >= 0
    assert rec.attempts >= 1
    with pytest.raises(ValueError):
        samplers.quarter_plane_walk("heart", 250, _gen(11))


# --- wedges --------------------------------------------------------------------


def test_wedge_mode_detection():
    assert samplers._wedge_mode(math.pi / 4.0) == 1
    assert samplers._wedge_mode(math.pi / 2.0) == 2
    assert samplers._wedge_mode(2.0 * math.pi) == 8
    assert samplers._wedge_mode(1.0) == 0  # not a multiple of pi/4
    with pytest.raises(ValueError):
        samplers._wedge_mode(0.0)
    with pytest.raises(ValueError):
        samplers._wedge_mode(7.0)


def test_wedge_start_sites():
    assert samplers.wedge_start(math.pi / 2.0) == (1, 1)
    assert samplers.wedge_start(math.pi / 4.0) == (2, 1)
    assert samplers.wedge_start(3.0 * math.pi / 4.0) == (0, 1)
    assert samplers.wedge_start(2.0 * math.pi) == (-1, 0)


_WEDGE_STEPS = [(1, 0), (-1, 0), (0, 1), (0, -1)]


def _wedge_positions(theta, path):
    pos = [samplers.wedge_start(theta)]
    for c in path:
        dx, dy = _WEDGE_STEPS[c]
        pos.append((pos[-1][0] + dx, pos[-1][1] + dy))
    return pos


def test_wedge_walk_right_angle_confined():
    path, rec = samplers.wedge_walk(math.pi / 2.0, 200, _gen(12))
    for x, y in _wedge_positions(math.pi / 2.0, path):
        assert x >= 0 and y >= 0
    assert rec.total_ops >= 200


def test_wedge_walk_slit_plane_confined():
    theta = 2.0 * math.pi
    path, _rec = samplers.wedge_walk(theta, 150, _gen(13))
    for x, y in _wedge_positions(theta, path):
        assert not (y == 0 and x >= 1)


def test_wedge_walk_generic_angle_confined():
    theta = 1.0  # not a multiple of pi/4: floating-point membership test
    path, _rec = samplers.wedge_walk(theta, 100, _gen(14))
    for x, y in _wedge_positions(theta, path):
        ang = math.atan2(y, x)
        if ang < 0.0:
            ang += 2.0 * math.pi
        assert ang <= theta + 1e-9


def test_wedge_walk_validation():
    with pytest.raises(ValueError):
        samplers.wedge_walk(math.pi / 2.0, 0, _gen(15))


# --- avoiding pair --------------------------------------------------------------


def test_avoiding_pair_traces_disjoint():
    n = 80
    (p1, p2), rec = samplers.avoiding_pair(n, _gen(16))
    assert len(p1) == len(p2) == n
    dx = {0: 1, 1: -1, 2: 0, 3: 0}
    dy = {0: 0, 1: 0, 2: 1, 3: -1}
    pos1, pos2 = (0, 0), (1, 0)
    seen1, seen2 = {pos1}, {pos2}
    for c1, c2 in zip(p1, p2):
        pos1 = (pos1[0] + dx[int(c1)], pos1[1] + dy[int(c1)])
        assert pos1 not in seen2
        seen1.add(pos1)
        pos2 = (pos2[0] + dx[int(c2)], pos2[1] + dy[int(c2)])
        assert pos2 not in seen1
        seen2.add(pos2)
    assert rec.total_ops >= 2 * n


def test_avoiding_pair_degenerate_and_validation():
    (p1, p2), rec = samplers.avoiding_pair(0, _gen(17))
    assert len(p1) == 0 and rec.total_ops == 0 and rec.attempts == 1
    with pytest.raises(ValueError):
        samplers.avoiding_pair(-1, _gen(17))


# --- batch drivers ---------------------------------------------------------------


def test_cost_distribution_basic():
    sample = samplers.cost_distribution("motzkin", 100, 50, seed=21)
    assert len(sample) == 50
    assert np.all(np.diff(sample.values) >= 0.0)
    assert sample.meta["source"] == "motzkin"
    assert sample.meta["n"] == 100
    assert sample.values.min() >= 1.0  # at least n ops over n target


def test_cost_distribution_thread_count_invariant(monkeypatch):
    serial = samplers.cost_distribution("motzkin", 60, 40, seed=22)
    monkeypatch.setenv("DMLAW_THREADS", "4")
    threaded = samplers.cost_distribution("motzkin", 60, 40, seed=22)
    np.testing.assert_array_equal(serial.values, threaded.values)


def test_cost_distribution_rejects_unknown():
    with pytest.raises(ValueError):
        samplers.cost_distribution("unknown-model", 10, 5, seed=1)


def test_run_one_covers_all_names():
    for name in samplers.SAMPLER_NAMES:
        rec = samplers._run_one(name, 20, _gen(23), theta=math.pi / 2.0)
        assert rec.total_ops >= 1
        assert rec.attempts >= 1


def test_survival_counts_rows():
    rows = samplers.survival_counts("motzkin", (64, 128), 500, seed=24)
    assert [r[0] for r in rows] == [64, 128]
    for _n, survivors, attempts in rows:
        assert attempts == 500
        assert 0 <= survivors <= attempts
    # per-size attempt schedules are accepted too
    rows2 = samplers.survival_counts("motzkin", (64, 128), (500, 700), seed=24)
    assert rows2[0][1] == rows[0][1]  # same stream at the same size
    assert rows2[1][2] == 700


def test_survival_counts_deterministic():
    a = samplers.survival_counts("pair", (32, 64), 300, seed=25)
    b = samplers.survival_counts("pair", (32, 64), 300, seed=25)
    assert a == b
