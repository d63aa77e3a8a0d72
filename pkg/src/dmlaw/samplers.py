"""Anticipated-rejection samplers with exact cost accounting.

Each sampler grows a combinatorial object step by step, aborts the
attempt the moment the target constraint is violated, and restarts from
scratch until an attempt succeeds.  The cost of a run is the total
number of elementary operations (step lengths summed) over *all*
attempts, the successful one included; normalized by the target size it
converges to a Darling-Mandelbrot law shifted by one (alpha being the
attempt survival exponent), or to its geometric convolution when a
completed attempt can still miss the target (p being the limiting
exact-hit probability).

Five families are implemented:

* colored Motzkin prefixes (height stays nonnegative) -- D(1/2);
* Schroeder prefixes with a length-2 level step, which can overshoot
  the target length -- D(1/2, (2+sqrt(2))/4);
* a generic positive-drift size process (hit-or-miss at the target,
  with either abandon-on-pass or a restart-past-n+sqrt(n) policy for
  backtracking increments);
* quarter-plane and wedge walks in two dimensions, with survival
  exponent pi/(2*theta) for opening angle theta;
* a pair of mutually-avoiding walks on the square lattice (their vertex
  traces must stay disjoint; self-intersections are allowed), with
  survival exponent 5/8.

Inner loops are numba-compiled and release the GIL; per-run determinism
comes from counter-based streams keyed by (seed, run index), so results
do not depend on batching or thread count.  The environment variable
DMLAW_THREADS (default 1) sets how many threads the batch drivers use.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from dmlaw.stats import EmpiricalSample

_SQRT2 = math.sqrt(2.0)
_RHO = _SQRT2 - 1.0  # Schroeder step probability; 2*rho + rho**2 = 1
_STEP_GUARD = 10**10  # single-run step budget before declaring a runaway
_DRAW_BLOCK = 512  # block size for buffered step draws in the python samplers


def _n_threads():
    try:
        return max(1, int(os.environ.get("DMLAW_THREADS", "1")))
    except ValueError:
        return 1


def _stream(seed, run):
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, run], dtype=np.uint64))
    )


@dataclass(frozen=True)
class WalkModel:
    """Step set of an anticipated-rejection sampler: displacement,
    probability and cost length per step, plus a description of the
    survival constraint and of how the target is reached."""

    name: str
    steps: tuple  # of (displacement, probability, length)
    constraint: str
    target: str  # 'exact-hit' or 'fixed-length'

    def __post_init__(self):
        total = sum(p for _, p, _ in self.steps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"WalkModel {self.name}: probabilities sum to {total}")
        for _, _, length in self.steps:
            if length < 1 or int(length) != length:
                raise ValueError(
                    f"WalkModel {self.name}: step lengths must be positive integers"
                )

    def drift(self):
        """Mean displacement per step (componentwise for 2-d steps)."""
        first = self.steps[0][0]
        if np.isscalar(first):
            return sum(d * p for d, p, _ in self.steps)
        return tuple(
            sum(d[i] * p for d, p, _ in self.steps) for i in range(len(first))
        )


def motzkin_model(colors=(1, 1, 1)):
    """Step set of the colored Motzkin sampler: u rising, d falling and
    h level colors, each step drawn uniformly among the u+d+h colors."""
    u, d, h = colors
    k = u + d + h
    steps = []
    if u:
        steps.append((+1, u / k, 1))
    if d:
        steps.append((-1, d / k, 1))
    if h:
        steps.append((0, h / k, 1))
    return WalkModel(
        name=f"motzkin{colors}",
        steps=tuple(steps),
        constraint="height stays >= 0",
        target="fixed-length",
    )


SCHROEDER_MODEL = WalkModel(
    name="schroeder",
    steps=((+1, _RHO, 1), (-1, _RHO, 1), (0, _RHO * _RHO, 2)),
    constraint="height stays >= 0; total length must not overshoot the target",
    target="exact-hit",
)

GESSEL_MODEL = WalkModel(
    name="gessel",
    steps=(
        ((-1, -1), 0.25, 1),
        ((-1, 0), 0.25, 1),
        ((1, 1), 0.25, 1),
        ((1, 0), 0.25, 1),
    ),
    constraint="both coordinates stay >= 0",
    target="fixed-length",
)

KREWERAS3_MODEL = WalkModel(
    name="kreweras3",
    steps=(((0, -1), 1 / 3, 1), ((-1, 0), 1 / 3, 1), ((1, 1), 1 / 3, 1)),
    constraint="both coordinates stay >= 0",
    target="fixed-length",
)

# the quarter-plane step sets are drift-free; anything else would change
# the survival exponent
assert GESSEL_MODEL.drift() == (0.0, 0.0)
assert KREWERAS3_MODEL.drift() == (0.0, 0.0)


@dataclass(frozen=True)
class CostRecord:
    """Cost accounting for one run: elementary operations summed over all
    attempts (the successful one included), the attempt count, and the
    target size.  ``overshoots`` counts completed attempts that missed
    the target by jumping past it (possible only with length-2 steps or
    size increments larger than 1); it stays zero elsewhere."""

    total_ops: int
    attempts: int
    target: int
    overshoots: int = 0

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError("CostRecord: attempts must be >= 1")
        if self.total_ops < 0 or self.overshoots < 0:
            raise ValueError("CostRecord: counts must be nonnegative")


# ---------------------------------------------------------------------------
# numba kernels: one full run (restart until success) or one attempt each


@njit(cache=True, nogil=True)
def _motzkin_run(rng, n, u, d, k, path):
    """Full Motzkin run; fills `path` with the successful attempt's color
    codes (0..u-1 rise, u..u+d-1 fall, rest level).  Returns
    (total_steps, attempts)."""
    total = 0
    attempts = 0
    while True:
        attempts += 1
        height = 0
        ok = True
        for i in range(n):
            c = rng.integers(0, k)
            path[i] = c
            total += 1
            if c < u:
                height += 1
            elif c < u + d:
                height -= 1
                if height < 0:
                    ok = False
                    break
        if ok:
            return total, attempts


@njit(cache=True, nogil=True)
def _motzkin_attempt(rng, n, u, d, k):
    """One Motzkin attempt; returns (steps_taken, survived)."""
    height = 0
    for i in range(n):
        c = rng.integers(0, k)
        if c < u:
            height += 1
        elif c < u + d:
            height -= 1
            if height < 0:
                return i + 1, False
    return n, True


@njit(cache=True, nogil=True)
def _motzkin_census(rng, n, n_runs, counts):
    """Tally successful unit-color Motzkin prefixes by base-3 code
    (0 rise, 1 fall, 2 level); single-stream batch helper."""
    code_buf = np.empty(n, dtype=np.int64)
    for _ in range(n_runs):
        while True:
            height = 0
            ok = True
            for i in range(n):
                c = rng.integers(0, 3)
                code_buf[i] = c
                if c == 0:
                    height += 1
                elif c == 1:
                    height -= 1
                    if height < 0:
                        ok = False
                        break
            if ok:
                break
        code = 0
        for i in range(n):
            code = 3 * code + code_buf[i]
        counts[code] += 1


@njit(cache=True, nogil=True)
def _schroeder_run(rng, n, rho, path):
    """Full Schroeder run.  Steps: rise (+1 height, length 1, prob rho),
    fall (-1, length 1, prob rho), long level (0, length 2, prob
    rho**2).  An attempt fails on height < 0 or on overshooting the
    target length (n-1 -> n+1 with a long step).  Fills `path` with step
    codes (0 rise, 1 fall, 2 long level) and returns
    (total_length, attempts, overshoots, n_steps)."""
    total = 0
    attempts = 0
    overshoots = 0
    while True:
        attempts += 1
        height = 0
        length = 0
        n_steps = 0
        failed = False
        while length < n:
            v = rng.random()
            if v < rho:
                code = 0
                step_len = 1
                height += 1
            elif v < 2.0 * rho:
                code = 1
                step_len = 1
                height -= 1
            else:
                code = 2
                step_len = 2
            total += step_len
            length += step_len
            if height < 0:
                failed = True
                break
            if length > n:
                overshoots += 1
                failed = True
                break
            path[n_steps] = code
            n_steps += 1
        if not failed:
            return total, attempts, overshoots, n_steps


@njit(cache=True, nogil=True)
def _size_walk(rng, n, incs, cumprobs, bound, all_positive):
    """One size-process walk from 0.  Returns (hit, ops) where ops sums
    |increment| over the steps taken; the walk stops on hitting n
    exactly, or on reaching/passing the failure bound."""
    size = 0
    ops = 0
    while True:
        v = rng.random()
        j = 0
        while v > cumprobs[j]:
            j += 1
        inc = incs[j]
        size += inc
        ops += abs(inc)
        if size == n:
            return True, ops
        if all_positive:
            if size > n:
                return False, ops
        elif size >= bound:
            return False, ops
        if ops > _STEP_GUARD:
            raise RuntimeError("size process exceeded the step budget")


@njit(cache=True, nogil=True)
def _quarter_plane_run(rng, n, is_gessel, path):
    """Full quarter-plane run (gessel or kreweras3 step set); restart
    whenever a coordinate goes negative.  Fills `path` with step indices
    into the model's step list; returns (total_steps, attempts)."""
    total = 0
    attempts = 0
    while True:
        attempts += 1
        x = 0
        y = 0
        ok = True
        for i in range(n):
            if is_gessel:
                c = rng.integers(0, 4)
                if c == 0:
                    x -= 1
                    y -= 1
                elif c == 1:
                    x -= 1
                elif c == 2:
                    x += 1
                    y += 1
                else:
                    x += 1
            else:
                c = rng.integers(0, 3)
                if c == 0:
                    y -= 1
                elif c == 1:
                    x -= 1
                else:
                    x += 1
                    y += 1
            path[i] = c
            total += 1
            if x < 0 or y < 0:
                ok = False
                break
        if ok:
            return total, attempts


@njit(cache=True, nogil=True)
def _quarter_plane_attempt(rng, n, is_gessel):
    x = 0
    y = 0
    for i in range(n):
        if is_gessel:
            c = rng.integers(0, 4)
            if c == 0:
                x -= 1
                y -= 1
            elif c == 1:
                x -= 1
            elif c == 2:
                x += 1
                y += 1
            else:
                x += 1
        else:
            c = rng.integers(0, 3)
            if c == 0:
                y -= 1
            elif c == 1:
                x -= 1
            else:
                x += 1
                y += 1
        if x < 0 or y < 0:
            return i + 1, False
    return n, True


@njit(cache=True, nogil=True)
def _wedge_ok(x, y, mode, theta):
    """Wedge membership with inclusive boundary.  mode 1..7 are the
    exact integer tests for theta = mode * pi/4; mode 8 is the plane
    slit along the positive x-axis; mode 0 falls back on the float
    angle test against theta."""
    if mode == 1:
        return y >= 0 and y <= x
    if mode == 2:
        return x >= 0 and y >= 0
    if mode == 3:
        return y >= 0 and x + y >= 0
    if mode == 4:
        return y >= 0
    if mode == 5:
        return y >= 0 or x <= y
    if mode == 6:
        return y >= 0 or x <= 0
    if mode == 7:
        return y >= 0 or x <= -y
    if mode == 8:
        return not (y == 0 and x >= 1)
    if x == 0 and y == 0:
        return True
    ang = math.atan2(y, x)
    if ang < 0.0:
        ang += 2.0 * math.pi
    return ang <= theta + 1e-12


@njit(cache=True, nogil=True)
def _wedge_run(rng, n, mode, theta, sx, sy, path):
    """Full wedge-walk run (simple symmetric steps E,W,N,S coded
    0,1,2,3) from the start site (sx, sy)."""
    total = 0
    attempts = 0
    while True:
        attempts += 1
        x = sx
        y = sy
        ok = True
        for i in range(n):
            c = rng.integers(0, 4)
            if c == 0:
                x += 1
            elif c == 1:
                x -= 1
            elif c == 2:
                y += 1
            else:
                y -= 1
            path[i] = c
            total += 1
            if not _wedge_ok(x, y, mode, theta):
                ok = False
                break
        if ok:
            return total, attempts


@njit(cache=True, nogil=True)
def _wedge_attempt(rng, n, mode, theta, sx, sy):
    x = sx
    y = sy
    for i in range(n):
        c = rng.integers(0, 4)
        if c == 0:
            x += 1
        elif c == 1:
            x -= 1
        elif c == 2:
            y += 1
        else:
            y -= 1
        if not _wedge_ok(x, y, mode, theta):
            return i + 1, False
    return n, True


# ---------------------------------------------------------------------------
# public samplers


def motzkin_prefix(n, rng, colors=(1, 1, 1)):
    """Uniform colored Motzkin prefix of length n by anticipated
    rejection: steps are drawn uniformly among u rising, d falling and h
    level colors, and the attempt restarts whenever the height dips
    below zero.  Requires u == d (otherwise the height walk has drift
    and the cost law changes family).

    Returns (path, record): the color codes of the successful attempt
    and the CostRecord across all attempts.
    """
    u, d, h = colors
    if u != d or u < 1:
        raise ValueError(f"motzkin_prefix: need rising colors == falling >= 1, got {colors}")
    if h < 0 or n < 1:
        raise ValueError("motzkin_prefix: need h >= 0 and n >= 1")
    path = np.empty(n, dtype=np.int64)
    total, attempts = _motzkin_run(rng, n, u, d, u + d + h, path)
    return path, CostRecord(total_ops=int(total), attempts=int(attempts), target=n)


def schroeder_prefix(n, rng):
    """Uniform Schroeder prefix of total length n by anticipated
    rejection; the long level step has length 2, so an attempt can
    overshoot the target (counted in ``record.overshoots``) as well as
    fall below height zero.

    Returns (path, record); the path holds the step codes of the
    successful attempt (0 rise, 1 fall, 2 long level).
    """
    if n < 1:
        raise ValueError("schroeder_prefix: need n >= 1")
    path = np.empty(n, dtype=np.int64)
    total, attempts, overshoots, n_steps = _schroeder_run(rng, n, _RHO, path)
    return (
        path[:n_steps].copy(),
        CostRecord(
            total_ops=int(total),
            attempts=int(attempts),
            target=n,
            overshoots=int(overshoots),
        ),
    )


def size_process(increments, n, policy, rng):
    """One walk of the generic size process: the size starts at 0 and
    moves by a random increment each step until it hits the target n
    exactly (hit) or the policy gives up on it.

    ``increments`` is a list of (integer step, probability) with
    positive mean drift and aperiodic support.  ``policy`` is
    'fail-on-pass' (abandon as soon as the size exceeds n) or
    'restart-at-sqrt' (allow overshoot up to n + ceil(sqrt(n)) before
    abandoning; only meaningful when some increment is negative).

    Returns (hit, record); the record's total_ops sums |increment| over
    the steps taken, i.e. the size units grown, so a hit costs at least
    n.  Each call is a single attempt (attempts == 1).
    """
    if n < 1:
        raise ValueError("size_process: need n >= 1")
    if policy not in ("fail-on-pass", "restart-at-sqrt"):
        raise ValueError(f"size_process: unknown policy {policy!r}")
    incs = np.array([i for i, _ in increments], dtype=np.int64)
    probs = np.array([p for _, p in increments], dtype=float)
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
        raise ValueError("size_process: probabilities must be nonnegative and sum to 1")
    drift = float(np.dot(incs, probs))
    if drift <= 0.0:
        raise ValueError(f"size_process: drift must be positive, got {drift}")
    if math.gcd(*[abs(int(i)) for i in incs]) != 1:
        raise ValueError("size_process: increment support must be aperiodic (gcd 1)")
    all_positive = bool(np.all(incs > 0))
    bound = n if policy == "fail-on-pass" else n + math.isqrt(n - 1) + 1
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    hit, ops = _size_walk(rng, n, incs, cum, bound, all_positive)
    return bool(hit), CostRecord(total_ops=int(ops), attempts=1, target=n)


def quarter_plane_walk(model, n, rng):
    """Uniform n-step walk confined to the quarter plane by anticipated
    rejection, for the 'gessel' or 'kreweras3' step set (survival
    exponents 2/3 and 3/4).  Returns (path, record); the path holds
    indices into the model's step list."""
    if model not in ("gessel", "kreweras3"):
        raise ValueError(f"quarter_plane_walk: unknown model {model!r}")
    if n < 1:
        raise ValueError("quarter_plane_walk: need n >= 1")
    path = np.empty(n, dtype=np.int64)
    total, attempts = _quarter_plane_run(rng, n, model == "gessel", path)
    return path, CostRecord(total_ops=int(total), attempts=int(attempts), target=n)


def _wedge_mode(theta):
    """Exact-test mode index for theta a multiple of pi/4, else 0."""
    if not 0.0 < theta <= 2.0 * math.pi + 1e-12:
        raise ValueError(f"wedge angle must lie in (0, 2*pi], got {theta}")
    ratio = theta / (math.pi / 4.0)
    k = round(ratio)
    if 1 <= k <= 8 and abs(ratio - k) < 1e-12:
        return k
    return 0


def wedge_start(theta):
    """Deterministic start site: the lattice point of smallest radius
    strictly inside the wedge (ties broken by angle closest to the
    bisector).  The apex itself is never used."""
    mode = _wedge_mode(theta)
    best = None
    r_found = None
    cap = max(16.0, (6.0 / theta) ** 2)
    r2 = 0
    while True:
        r2 += 1
        if best is not None and r2 > r_found:
            break
        if r2 > cap:
            raise ValueError(f"wedge_start: no interior lattice site found for theta={theta}")
        lim = math.isqrt(r2)
        for x in range(-lim, lim + 1):
            rem = r2 - x * x
            y = math.isqrt(rem)
            if y * y != rem:
                continue
            for yy in {y, -y}:
                ang = math.atan2(yy, x)
                if ang < 0.0:
                    ang += 2.0 * math.pi
                interior = 1e-12 < ang < theta - 1e-12
                if mode == 8:
                    interior = not (yy == 0 and x >= 0)
                if interior:
                    score = abs(ang - 0.5 * theta)
                    if best is None or (r2, score) < best[0]:
                        best = ((r2, score), (x, yy))
                        r_found = r2
    return best[1]


def wedge_walk(theta, n, rng):
    """Uniform n-step simple symmetric walk confined (inclusively) to
    the planar wedge of opening angle theta, by anticipated rejection.

    theta must lie in (0, 2*pi]; multiples of pi/4 use exact integer
    membership tests, other angles use the floating-point angle.  theta
    = 2*pi is the plane slit along the positive x-axis (the walk may
    never touch a site (x, 0) with x >= 1).  The walk starts at the
    interior site closest to the apex.  Survival exponent: pi/(2*theta).

    Returns (path, record); path codes are 0 east, 1 west, 2 north,
    3 south.
    """
    if n < 1:
        raise ValueError("wedge_walk: need n >= 1")
    mode = _wedge_mode(theta)
    sx, sy = wedge_start(theta)
    path = np.empty(n, dtype=np.int64)
    total, attempts = _wedge_run(rng, n, mode, theta, sx, sy, path)
    return path, CostRecord(total_ops=int(total), attempts=int(attempts), target=n)


def avoiding_pair(n, rng):
    """Two mutually-avoiding n-step walks by anticipated rejection.

    The walks start at (0, 0) and (1, 0); in each time unit walk 1
    steps, then walk 2, each uniformly N/S/E/W, and the attempt fails
    the moment one walk lands on any vertex the *other* walk has ever
    visited (start sites included).  A walk may revisit its own trace.
    Every executed step counts one operation, so a surviving time unit
    costs 2.

    Returns ((path1, path2), record) with step codes 0 east, 1 west,
    2 north, 3 south.  n = 0 is a degenerate success with zero cost.
    """
    if n < 0:
        raise ValueError("avoiding_pair: need n >= 0")
    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        return (empty, empty), CostRecord(total_ops=0, attempts=1, target=0)
    # encode lattice points injectively into ints for fast set lookups;
    # draw step codes in small blocks since most attempts die early
    off = n + 2
    width = 2 * off + 1
    dx = (1, -1, 0, 0)
    dy = (0, 0, 1, -1)
    buf = rng.integers(0, 4, size=_DRAW_BLOCK)
    pos = 0
    total = 0
    attempts = 0
    while True:
        attempts += 1
        x1, y1 = 0, 0
        x2, y2 = 1, 0
        seen1 = {off * width + off}
        seen2 = {(1 + off) * width + off}
        path1 = np.empty(n, dtype=np.int64)
        path2 = np.empty(n, dtype=np.int64)
        failed = False
        for i in range(n):
            if pos == _DRAW_BLOCK:
                buf = rng.integers(0, 4, size=_DRAW_BLOCK)
                pos = 0
            c1 = buf[pos]
            pos += 1
            x1 += dx[c1]
            y1 += dy[c1]
            total += 1
            key1 = (x1 + off) * width + (y1 + off)
            if key1 in seen2:
                failed = True
                break
            seen1.add(key1)
            path1[i] = c1
            if pos == _DRAW_BLOCK:
                buf = rng.integers(0, 4, size=_DRAW_BLOCK)
                pos = 0
            c2 = buf[pos]
            pos += 1
            x2 += dx[c2]
            y2 += dy[c2]
            total += 1
            key2 = (x2 + off) * width + (y2 + off)
            if key2 in seen1:
                failed = True
                break
            seen2.add(key2)
            path2[i] = c2
        if not failed:
            return (path1, path2), CostRecord(
                total_ops=int(total), attempts=int(attempts), target=n
            )


def _pair_attempt(n, rng):
    """One avoiding-pair attempt; returns (steps_taken, survived)."""
    off = n + 2
    width = 2 * off + 1
    dx = (1, -1, 0, 0)
    dy = (0, 0, 1, -1)
    x1, y1 = 0, 0
    x2, y2 = 1, 0
    seen1 = {off * width + off}
    seen2 = {(1 + off) * width + off}
    steps = 0
    buf = rng.integers(0, 4, size=_DRAW_BLOCK)
    pos = 0
    for i in range(n):
        if pos == _DRAW_BLOCK:
            buf = rng.integers(0, 4, size=_DRAW_BLOCK)
            pos = 0
        c1 = buf[pos]
        pos += 1
        x1 += dx[c1]
        y1 += dy[c1]
        steps += 1
        key1 = (x1 + off) * width + (y1 + off)
        if key1 in seen2:
            return steps, False
        seen1.add(key1)
        if pos == _DRAW_BLOCK:
            buf = rng.integers(0, 4, size=_DRAW_BLOCK)
            pos = 0
        c2 = buf[pos]
        pos += 1
        x2 += dx[c2]
        y2 += dy[c2]
        steps += 1
        key2 = (x2 + off) * width + (y2 + off)
        if key2 in seen1:
            return steps, False
        seen2.add(key2)
    return steps, True


# ---------------------------------------------------------------------------
# batch drivers


def _run_one(name, n, rng, theta=None, colors=(1, 1, 1), policy="fail-on-pass",
             increments=((1, 2 / 3), (2, 1 / 3))):
    """Dispatch a single run of the named sampler; returns a CostRecord.

    For 'sizeproc' the walk is restarted until it hits, so the record
    aggregates the attempts like the other samplers.
    """
    if name == "motzkin":
        return motzkin_prefix(n, rng, colors=colors)[1]
    if name == "schroeder":
        return schroeder_prefix(n, rng)[1]
    if name == "gessel" or name == "kreweras3":
        return quarter_plane_walk(name, n, rng)[1]
    if name == "wedge":
        return wedge_walk(theta if theta is not None else math.pi / 2.0, n, rng)[1]
    if name == "pair":
        return avoiding_pair(n, rng)[1]
    if name == "sizeproc":
        total = 0
        attempts = 0
        while True:
            hit, rec = size_process(increments, n, policy, rng)
            total += rec.total_ops
            attempts += 1
            if hit:
                return CostRecord(total_ops=total, attempts=attempts, target=n)
    raise ValueError(f"unknown sampler {name!r}")


SAMPLER_NAMES = ("motzkin", "schroeder", "sizeproc", "gessel", "kreweras3", "wedge", "pair")


def cost_distribution(op, n, n_runs, seed, **kwargs):
    """Normalized costs total_ops/n over n_runs independent runs.

    ``op`` is a sampler name from SAMPLER_NAMES or a callable
    ``op(n, rng, **kwargs) -> (..., CostRecord)``.  Run i uses the
    stream keyed by (seed, i); with DMLAW_THREADS > 1 runs execute in a
    thread pool (the compiled kernels release the GIL) with identical
    results.
    """
    if n_runs < 1:
        raise ValueError("cost_distribution: need n_runs >= 1")
    if callable(op):
        def one(run):
            rec = op(n, _stream(seed, run), **kwargs)[-1]
            return rec.total_ops
        source = getattr(op, "__name__", "callable")
    else:
        def one(run):
            return _run_one(op, n, _stream(seed, run), **kwargs).total_ops
        source = op
    values = np.empty(n_runs)
    workers = _n_threads()
    if workers == 1:
        for run in range(n_runs):
            values[run] = one(run)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for run, val in enumerate(pool.map(one, range(n_runs), chunksize=256)):
                values[run] = val
    return EmpiricalSample(
        values=np.sort(values / n),
        meta={"source": source, "n": n, "n_runs": n_runs, "seed": seed, **kwargs},
    )


def _attempt_fn(name, theta=None, colors=(1, 1, 1)):
    if name == "motzkin":
        u, d, h = colors
        k = u + d + h
        return lambda n, rng: _motzkin_attempt(rng, n, u, d, k)
    if name == "gessel":
        return lambda n, rng: _quarter_plane_attempt(rng, n, True)
    if name == "kreweras3":
        return lambda n, rng: _quarter_plane_attempt(rng, n, False)
    if name == "wedge":
        th = theta if theta is not None else math.pi / 2.0
        mode = _wedge_mode(th)
        sx, sy = wedge_start(th)
        return lambda n, rng: _wedge_attempt(rng, n, mode, th, sx, sy)
    if name == "pair":
        return lambda n, rng: _pair_attempt(n, rng)
    raise ValueError(f"no attempt-level survival for sampler {name!r}")


def survival_counts(model, sizes, attempts, seed, theta=None, colors=(1, 1, 1)):
    """Attempt-level survival counts for exponent estimation.

    Runs ``attempts[i]`` fresh attempts of the named model at target
    size ``sizes[i]`` (stream keyed by (seed, i)) and returns rows
    (n, survivors, attempts) ready for
    :func:`dmlaw.stats.survival_exponent`.
    """
    fn = _attempt_fn(model, theta=theta, colors=colors)
    if np.isscalar(attempts):
        attempts = [int(attempts)] * len(sizes)
    rows = []
    for level, (n, n_att) in enumerate(zip(sizes, attempts)):
        rng = _stream(seed, level)
        survived = 0
        for _ in range(n_att):
            _, ok = fn(int(n), rng)
            survived += ok
        rows.append((int(n), int(survived), int(n_att)))
    return rows
