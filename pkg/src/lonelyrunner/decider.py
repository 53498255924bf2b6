"""Deciding gamma^min(v) vs gamma by covering a parameter box with certificates.

Shifts are reparameterized as x_i = -s_i / v_i with x_1 pinned to 0; the
shifted gap exceeds gamma iff every x in the starting box admits a lonely
time, i.e. iff the box is covered by the certificate polytropes T_(k, gamma).
The decider maintains a worklist of uncovered polytrope pieces, certifies the
interior point of each piece and subtracts the certificate's region.  A
one-way switch from strict (Open) to weak (Closed) loneliness distinguishes
gamma^min == gamma from gamma^min > gamma.
"""

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .exact import (
    Comparison,
    Interval,
    Rational,
    format_rational,
    rational_floor,
    stern_brocot_search,
)
from .polytrope import (
    CoverMode,
    Polytrope,
    interior_point,
    normalize_point,
    subtract_certificate,
)
from .runner import (
    blocked_stream,
    canonical_shift,
    check_velocities,
    free_intervals,
    normalize_velocities,
)

ZERO = Rational(0)
ONE = Rational(1)
HALF = Rational(1, 2)

DEFAULT_MAX_ITERATIONS = 10_000_000
MAX_ITER_ENV = "LONELY_MAX_ITER"


class DivergedError(RuntimeError):
    """Iteration cap hit; indicates a bug, never expected behavior."""


@dataclass(frozen=True)
class Certificate:
    """A round vector k together with its region T_(k, gamma)."""

    rounds: tuple
    region: Polytrope


@dataclass
class Decision:
    """Outcome of decide(): gamma^min(v) vs gamma, with evidence.

    LESS carries a witness parameter point and its reconstructed shifts;
    GREATER and EQUAL carry the ordered log of certificates whose regions
    covered the starting box.
    """

    outcome: Comparison
    witness_point: Optional[tuple] = None
    witness_shifts: Optional[tuple] = None
    certificates: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        out = {"outcome": self.outcome.name.lower()}
        if self.witness_shifts is not None:
            out["witness_shifts"] = [format_rational(s) for s in self.witness_shifts]
            out["witness_point"] = [format_rational(c) for c in self.witness_point]
        else:
            out["certificates"] = [list(c.rounds) for c in self.certificates]
        return out


def shifts_from_point(v: Sequence[int], x: Sequence) -> tuple:
    """Reconstruct the shift vector: s_i = -x_i * v_i (mod 1)."""
    vec = check_velocities(v)
    pt = normalize_point(x)
    return tuple(canonical_shift(-c * vi) for c, vi in zip(pt, vec))


def default_max_denominator(v: Sequence[int]) -> int:
    prod = math.prod(check_velocities(v))
    return 16 * prod * prod


def initial_domain(v: Sequence[int]) -> Polytrope:
    """Starting box: 0 <= x_i <= 1/v_i, with the second coordinate tightened
    to 1/lcm(v_1, v_2); all shift classes are represented inside it."""
    vec = check_velocities(v)
    n = len(vec)
    bound = [ZERO] + [Rational(1, vi) for vi in vec[1:]]
    if n >= 2:
        bound[1] = Rational(1, math.lcm(vec[0], vec[1]))
    rows = []
    for i in range(n):
        rows.append(
            tuple(
                ZERO if j == i else (ZERO if j == 0 else bound[j])
                for j in range(n)
            )
        )
    return Polytrope(tuple(rows), canonical=True)


def certificate_polytrope(k: Sequence[int], v: Sequence[int], gamma) -> Polytrope:
    """Region of parameter points certified lonely by round vector k.

    Bounds have the product form B[i][j] = (k_i+1-gamma)/v_i - (k_j+gamma)/v_j,
    which already satisfies the triangle inequality with slack, so the matrix
    is canonical as built and the region is full-dimensional for gamma < 1/2.
    """
    vec = check_velocities(v)
    gamma = Rational(gamma)
    if not (ZERO <= gamma < HALF):
        raise ValueError("gamma must lie in [0, 1/2)")
    rounds = tuple(int(c) for c in k)
    if len(rounds) != len(vec):
        raise ValueError("round vector length must match velocities")
    for ki, vi in zip(rounds, vec):
        if not (-1 <= ki <= vi - 1):
            raise ValueError(f"round {ki} outside [-1, {vi - 1}]")
    upper = [Rational(ki + 1 - gamma, vi) for ki, vi in zip(rounds, vec)]
    lower = [Rational(ki + gamma, vi) for ki, vi in zip(rounds, vec)]
    n = len(vec)
    rows = tuple(
        tuple(ZERO if i == j else upper[i] - lower[j] for j in range(n))
        for i in range(n)
    )
    return Polytrope(rows, canonical=True)


def find_certificate(
    x: Sequence, v: Sequence[int], gamma, mode: CoverMode
) -> Optional[tuple]:
    """Round vector certifying x lonely at radius gamma, or None if covered.

    The times blocked by runner i form per-runner sorted streams; their merged
    complement in [0, 1] is computed with one heap entry per runner.  If a
    free interval remains, its midpoint t* determines the rounds
    k_i = floor((t* - x_i) v_i).  Open mode blocks with closed intervals
    (strict loneliness); Closed mode with open ones, so isolated free time
    points count.
    """
    vec = check_velocities(v)
    pt = normalize_point(x)
    gamma = Rational(gamma)
    streams = [blocked_stream(vi, xi, gamma) for vi, xi in zip(vec, pt)]
    free = free_intervals(streams, ZERO, ONE, blocked_closed=(mode is CoverMode.OPEN))
    if not free:
        return None
    best = free[0]
    for piece in free[1:]:
        if piece[1] - piece[0] > best[1] - best[0]:
            best = piece
    t_star = (best[0] + best[1]) / 2
    rounds = tuple(rational_floor((t_star - xi) * vi) for xi, vi in zip(pt, vec))
    for ki, vi in zip(rounds, vec):
        if not (-1 <= ki <= vi - 1):
            raise RuntimeError(f"round {ki} out of range for velocity {vi}")
    return rounds


def _max_iterations(value: Optional[int]) -> int:
    if value is not None:
        return int(value)
    return int(os.environ.get(MAX_ITER_ENV, DEFAULT_MAX_ITERATIONS))


def decide(
    v: Sequence[int],
    gamma,
    *,
    max_iterations: Optional[int] = None,
    allow_closed: bool = True,
) -> Decision:
    """Compare gamma^min(v) against gamma: GREATER, EQUAL, or LESS.

    GREATER: the starting box was covered by strict certificates.
    EQUAL: covering succeeded only after admitting weak (dist == gamma)
    loneliness; some shift attains the gap exactly.
    LESS: a parameter point admits no lonely time at radius gamma; its
    reconstructed shift vector witnesses gamma^min < gamma (or == when the
    closed fallback was disabled).
    """
    vec = normalize_velocities(v)
    gamma = Rational(gamma)
    if not (ZERO < gamma < HALF):
        raise ValueError("gamma must lie in (0, 1/2)")
    cap = _max_iterations(max_iterations)
    mode = CoverMode.OPEN
    work = [initial_domain(vec)]
    certificates: list[Certificate] = []
    iterations = 0
    while work:
        iterations += 1
        if iterations > cap:
            raise DivergedError(
                f"no decision for v={vec} gamma={format_rational(gamma)} "
                f"after {cap} iterations"
            )
        y = work[-1]
        x = interior_point(y)
        rounds = find_certificate(x, vec, gamma, mode)
        if rounds is None:
            if mode is CoverMode.OPEN and allow_closed:
                rounds = find_certificate(x, vec, gamma, CoverMode.CLOSED)
                if rounds is not None:
                    # one-way switch to weak loneliness; boundary-only pieces
                    # become irrelevant from here on
                    mode = CoverMode.CLOSED
                    work = [p for p in work if p.is_full_dimensional()]
                    if not work or work[-1] is not y:
                        continue
            if rounds is None:
                return Decision(
                    outcome=Comparison.LESS,
                    witness_point=x,
                    witness_shifts=shifts_from_point(vec, x),
                    certificates=certificates,
                )
        region = certificate_polytrope(rounds, vec, gamma)
        if not region.contains(x, strict=(mode is CoverMode.OPEN)):
            raise RuntimeError(
                f"certificate {rounds} does not contain its witness point"
            )
        work.pop()
        pieces = subtract_certificate(y, region, mode)
        for piece in pieces:
            if piece.bounds == y.bounds:
                raise RuntimeError("subtract made no progress")
        work.extend(pieces)
        certificates.append(Certificate(rounds, region))
    outcome = Comparison.GREATER if mode is CoverMode.OPEN else Comparison.EQUAL
    return Decision(outcome=outcome, certificates=certificates)


def shifted_gap(v: Sequence[int], max_denominator: Optional[int] = None):
    """Exact gamma^min(v) via Stern-Brocot search driven by decide().

    Returns the exact rational when its denominator fits under the cap,
    otherwise the bracketing Interval.  A single velocity always has gap 1/2
    (the search interval (0, 1/2) excludes it, so it is returned directly).
    """
    vec = normalize_velocities(v)
    if len(vec) == 1:
        return HALF
    if max_denominator is None:
        max_denominator = default_max_denominator(vec)

    def oracle(q):
        return decide(vec, q).outcome

    return stern_brocot_search(oracle, max_denominator)


def minimizing_shift(v: Sequence[int], gamma) -> tuple:
    """A shift vector s with gap(v; s) <= gamma, found by strict covering.

    With gamma equal to the exact gamma^min(v) the returned s attains the
    minimum.  Raises if strict certificates cover everything (gamma too small).
    """
    decision = decide(v, gamma, allow_closed=False)
    if decision.outcome is not Comparison.LESS:
        raise ValueError(
            f"no shift with gap <= {format_rational(gamma)}: "
            f"gamma^min is larger"
        )
    return decision.witness_shifts
