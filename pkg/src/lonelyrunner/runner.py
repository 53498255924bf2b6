"""Runners on the circle: exact gap evaluation and interval covering.

A runner instance is a tuple of positive integer velocities v and rational
shifts s; runner i sits at s_i + v_i t (mod 1) at time t.  The loneliness gap
of the instance is sup_t min_i dist(s_i + v_i t, Z).  Everything here is
exact: candidate times are enumerated from sawtooth crossings, and covering
questions are settled on closed rational intervals.
"""

import heapq
import math
from typing import Iterable, Iterator, Sequence

from .exact import (
    ONE,
    ZERO,
    Rational,
    dist_to_integers,
    rational_ceil,
    rational_floor,
)


def check_velocities(v: Sequence[int]) -> tuple[int, ...]:
    vec = tuple(int(x) for x in v)
    if not vec:
        raise ValueError("empty velocity vector")
    if any(x <= 0 for x in vec):
        raise ValueError(f"velocities must be positive: {vec}")
    return vec


def normalize_velocities(v: Sequence[int]) -> tuple[int, ...]:
    """Divide out the common factor; the gap only depends on this form."""
    vec = check_velocities(v)
    g = math.gcd(*vec)
    return tuple(x // g for x in vec)


def canonical_shift(s) -> "Rational":
    """Reduce a shift mod 1 into [0, 1)."""
    s = Rational(s)
    return s - rational_floor(s)


def check_shifts(v: Sequence[int], s: Sequence) -> tuple["Rational", ...]:
    vec = check_velocities(v)
    shifts = tuple(canonical_shift(x) for x in s)
    if len(shifts) != len(vec):
        raise ValueError("shift vector length must match velocities")
    return shifts


# ---------------------------------------------------------------------------
# Exact pointwise gap
# ---------------------------------------------------------------------------


def gamma_at(v: Sequence[int], s: Sequence) -> "Rational":
    """sup over t of min_i dist(s_i + v_i t, Z), computed exactly.

    The ensemble is 1-periodic in t, and the upper envelope of the pointwise
    minimum is piecewise linear, so the supremum is attained at a sawtooth
    apex/zero or at a crossing of two sawtooth branches; all such candidate
    times in [0, 1] are enumerated (O((sum v)^2) of them) and evaluated.
    """
    vec = check_velocities(v)
    shifts = check_shifts(vec, s)
    candidates = {ZERO, ONE}

    def add_solutions(a: int, c) -> None:
        # times with a*t = c (mod 1), a != 0, clipped to [0, 1]
        lo = rational_ceil(min(0, a) - c)
        hi = rational_floor(max(0, a) - c)
        for z in range(lo, hi + 1):
            t = Rational(c + z, a)
            if ZERO <= t <= ONE:
                candidates.add(t)

    for vi, si in zip(vec, shifts):
        add_solutions(vi, -si)  # sawtooth zeros
        add_solutions(vi, Rational(1, 2) - si)  # sawtooth apexes
    n = len(vec)
    for i in range(n):
        for j in range(i + 1, n):
            # branch crossings: s_i + v_i t = +-(s_j + v_j t) (mod 1)
            add_solutions(vec[i] + vec[j], -shifts[i] - shifts[j])
            if vec[i] != vec[j]:
                add_solutions(vec[i] - vec[j], shifts[j] - shifts[i])

    best = ZERO
    for t in candidates:
        m = min(dist_to_integers(si + vi * t) for vi, si in zip(vec, shifts))
        if m > best:
            best = m
    return best


# ---------------------------------------------------------------------------
# Closed-interval covering
# ---------------------------------------------------------------------------


def greedy_interval_cover(intervals: Iterable, target):
    """Check whether closed intervals cover the closed target interval.

    Returns None when covered; otherwise the maximal uncovered open
    subinterval of maximum length (leftmost among ties) as a (lo, hi) pair.
    """
    lo, hi = Rational(target[0]), Rational(target[1])
    if lo > hi:
        raise ValueError("empty target")
    clipped = sorted(
        (Rational(a), Rational(b))
        for a, b in intervals
        if not (Rational(b) < lo or Rational(a) > hi)
    )
    if lo == hi:
        # clipping kept exactly the intervals containing the point
        return None if clipped else (lo, hi)
    cur = lo
    best = None

    def consider(a, b):
        nonlocal best
        if best is None or b - a > best[1] - best[0]:
            best = (a, b)

    for a, b in clipped:
        if a > cur:
            consider(cur, min(a, hi))
        if b > cur:
            cur = b
        if cur >= hi:
            break
    if cur < hi:
        consider(cur, hi)
    return best


def danger_intervals(v: Sequence[int], s: Sequence, gamma) -> list:
    """Closed t-intervals where runner i is within gamma of the origin."""
    vec = check_velocities(v)
    shifts = check_shifts(vec, s)
    gamma = Rational(gamma)
    out = []
    for vi, si in zip(vec, shifts):
        for z in range(rational_floor(si - gamma), rational_ceil(si + vi + gamma) + 1):
            a = Rational(z - gamma - si, vi)
            b = Rational(z + gamma - si, vi)
            if b < ZERO or a > ONE:
                continue
            out.append((max(a, ZERO), min(b, ONE)))
    return out


def verify_gap_upper_bound(v: Sequence[int], s: Sequence, gamma) -> bool:
    """True iff the instance gap is <= gamma.

    Equivalent to the closed danger intervals covering [0, 1]; this is an
    independent route from gamma_at (interval sweep vs envelope maximum).
    """
    return greedy_interval_cover(danger_intervals(v, s, gamma), (ZERO, ONE)) is None


# ---------------------------------------------------------------------------
# Per-runner blocked-time streams for the decider
# ---------------------------------------------------------------------------


def blocked_stream(vi: int, xi, gamma) -> Iterator[tuple]:
    """Sorted disjoint blocked intervals of one runner over k = -1 .. v_i.

    Runner i with parameter x_i blocks t in [x_i + (k-gamma)/v_i,
    x_i + (k+gamma)/v_i].  The k range covers one full period of [0, 1]
    including both wrap ends, so no truly-blocked zone near 0 or 1 is missed.
    """
    xi = Rational(xi)
    gamma = Rational(gamma)
    for k in range(-1, vi + 1):
        yield (xi + Rational(k - gamma, vi), xi + Rational(k + gamma, vi))


def free_intervals(streams, lo, hi, blocked_closed: bool) -> list:
    """Free pieces of [lo, hi] left by merged streams of blocked intervals.

    Each stream yields its intervals sorted and disjoint, so the heap holds
    one entry per stream.  With blocked_closed the free pieces are open
    intervals (returned as (a, b) with a < b); otherwise the blocked
    intervals are treated as open and the free pieces are closed, possibly
    degenerate single points (a == b).
    """
    lo, hi = Rational(lo), Rational(hi)
    heap = []
    iters = []
    for idx, stream in enumerate(streams):
        it = iter(stream)
        first = next(it, None)
        iters.append(it)
        if first is not None:
            heap.append((first[0], first[1], idx))
    heapq.heapify(heap)
    cur = lo
    free = []
    while heap:
        a, b, idx = heapq.heappop(heap)
        nxt = next(iters[idx], None)
        if nxt is not None:
            heapq.heappush(heap, (nxt[0], nxt[1], idx))
        if a > cur:
            if cur > hi:
                break
            free.append((cur, min(a, hi)))
        elif a == cur and not blocked_closed and lo <= cur <= hi:
            # open blocked intervals touch here without covering the point
            if not (free and free[-1][1] == cur):
                free.append((cur, cur))
        if b > cur:
            cur = b
        if blocked_closed and cur >= hi:
            break
        if not blocked_closed and cur > hi:
            break
    if cur < hi:
        free.append((cur, hi))
    elif cur == hi and not blocked_closed:
        if not (free and free[-1][1] == hi):
            free.append((hi, hi))
    return free
