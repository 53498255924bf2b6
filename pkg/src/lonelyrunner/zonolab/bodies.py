"""Lattices of the form Z^d + (1/q)<w>, H-described centered bodies, and the
brute-force minima computed from them: first c-minimum, planar successive
minima, and bounded lattice-width search.
"""

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from ..exact import (
    Rational,
    matrix_inverse_rational,
    matrix_rank,
    rational_ceil,
    rational_floor,
)

ZERO = Rational(0)
ONE = Rational(1)
HALF = Rational(1, 2)

ENUMERATION_LIMIT = 2_000_000


class UnboundedBodyError(ValueError):
    pass


class BoundTooLargeError(ValueError):
    """Functional enumeration space exceeds the configured limit."""


class Exactly(NamedTuple):
    width: int


class GreaterThan(NamedTuple):
    bound: int


@dataclass(frozen=True)
class LatticeDescription:
    """The superlattice Z^dim + (1/q)<w> with integer q >= 1 and w in Z^dim.

    p belongs iff q*p is integral and congruent to some multiple of w mod q.
    """

    dim: int
    q: int
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if len(self.w) != self.dim:
            raise ValueError("w must have one entry per dimension")

    def contains(self, point: Sequence) -> bool:
        scaled = []
        for x in point:
            qx = Rational(x) * self.q
            if rational_floor(qx) != qx:
                return False
            scaled.append(rational_floor(qx))
        for m in range(self.q):
            if all((s - m * wi) % self.q == 0 for s, wi in zip(scaled, self.w)):
                return True
        return False

    def points_in_box(self, lo: Sequence, hi: Sequence) -> list:
        """All lattice points p with lo <= p <= hi coordinatewise."""
        lo = [Rational(x) for x in lo]
        hi = [Rational(x) for x in hi]
        found = []
        seen = set()
        for m in range(self.q):
            offsets = [Rational(m * wi, self.q) for wi in self.w]
            ranges = []
            for lo_i, hi_i, off in zip(lo, hi, offsets):
                z_lo = rational_ceil(lo_i - off)
                z_hi = rational_floor(hi_i - off)
                if z_lo > z_hi:
                    ranges = None
                    break
                ranges.append(range(z_lo, z_hi + 1))
            if ranges is None:
                continue
            for combo in itertools.product(*ranges):
                point = tuple(z + off for z, off in zip(combo, offsets))
                if point not in seen:
                    seen.add(point)
                    found.append(point)
        return found

    def to_json_dict(self) -> dict:
        return {"q": self.q, "w": list(self.w)}


@dataclass(frozen=True)
class CenteredBody:
    """Intersection of slabs a <= g(x) <= b, symmetric about a known center.

    Each pair must satisfy g(center) == (a+b)/2.  The bounding box is
    supplied by the constructor (computable from generators for zonotopes,
    trivial for boxes) and drives all enumerations.
    """

    pairs: tuple  # ((g coefficients), a, b)
    center: tuple
    bbox: tuple  # (lo tuple, hi tuple)

    def __post_init__(self):
        pairs = tuple(
            (tuple(int(c) for c in g), Rational(a), Rational(b))
            for g, a, b in self.pairs
        )
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "center", tuple(Rational(c) for c in self.center))
        lo, hi = self.bbox
        object.__setattr__(
            self,
            "bbox",
            (tuple(Rational(x) for x in lo), tuple(Rational(x) for x in hi)),
        )
        for g, a, b in self.pairs:
            if a > b:
                raise ValueError("empty slab")
            val = sum(c * x for c, x in zip(g, self.center))
            if 2 * val != a + b:
                raise ValueError(f"center breaks the symmetry of slab {g}")

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, point: Sequence) -> bool:
        pt = [Rational(x) for x in point]
        for g, a, b in self.pairs:
            val = sum(c * x for c, x in zip(g, pt))
            if val < a or val > b:
                return False
        return True

    def gauge(self, point: Sequence) -> Rational:
        """Gauge distance of the point from the center: max over slabs of
        |g(p) - g(c)| / ((b-a)/2).  Requires every slab full (b > a)."""
        pt = [Rational(x) for x in point]
        best = ZERO
        for g, a, b in self.pairs:
            half = (b - a) / 2
            if half == 0:
                raise UnboundedBodyError("degenerate slab has no gauge")
            val = sum(c * x for c, x in zip(g, pt))
            mid = (a + b) / 2
            dist = abs(val - mid) / half
            if dist > best:
                best = dist
        return best


def first_c_minimum(body: CenteredBody, lattice: LatticeDescription) -> Rational:
    """Smallest dilation of the body about its center that meets the lattice.

    Enumerates lattice points in boxes expanding about the center; any point
    found at gauge <= t is a global minimum candidate because the gauge-t
    region sits inside the t-scaled bounding box.
    """
    if lattice.dim != body.dim:
        raise ValueError("lattice and body dimensions differ")
    c = body.center
    lo0, hi0 = body.bbox
    t = 1
    while True:
        lo = [ci + t * (li - ci) for ci, li in zip(c, lo0)]
        hi = [ci + t * (hi_i - ci) for ci, hi_i in zip(c, hi0)]
        points = lattice.points_in_box(lo, hi)
        if points:
            best = min(body.gauge(p) for p in points)
            if best <= t:
                return best
        t *= 2
        if t > 2 ** 20:
            raise UnboundedBodyError("no lattice point found; body too thin?")


def _is_parallel(a: Sequence, b: Sequence) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0


def successive_minima_2d(body: CenteredBody):
    """(lambda_1, lambda_2) of the difference body K-K with respect to Z^2.

    K is centrally symmetric about its center, so K-K = 2(K-c) and the gauge
    of K-K is half the centered gauge.  Points are enumerated in expanding
    boxes; lambda_2 is the smallest gauge among points independent from a
    fixed shortest vector.
    """
    if body.dim != 2:
        raise ValueError("successive minima implemented for dimension 2 only")
    c = body.center
    lo0, hi0 = body.bbox
    lattice = LatticeDescription(2, 1, (0, 0))
    t = 1
    while True:
        lo = [t * (li - ci) for ci, li in zip(c, lo0)]
        hi = [t * (hi_i - ci) for ci, hi_i in zip(c, hi0)]
        points = [
            p for p in lattice.points_in_box(lo, hi) if p != (ZERO, ZERO)
        ]
        if points:
            # difference-body gauge: measure p + c against K, halved
            gauges = sorted(
                (body.gauge([x + ci for x, ci in zip(p, c)]) / 2, p)
                for p in points
            )
            lam1, shortest = gauges[0]
            lam2 = None
            for g, p in gauges:
                if not _is_parallel(p, shortest):
                    lam2 = g
                    break
            # the box only certifies difference-body gauges up to t/2
            if lam2 is not None and lam2 <= Rational(t, 2):
                return lam1, lam2
        t *= 2
        if t > 2 ** 20:
            raise UnboundedBodyError("difference body meets no lattice plane")


def lattice_width_upto(config, lattice: LatticeDescription, bound: int):
    """Minimum width of the zonotope of config over functionals integral on
    the lattice, searched up to the given width bound.

    Any functional of width <= bound takes values in [-bound, bound] on every
    generator, so enumerating value tuples on an independent generator subset
    is exhaustive.  Returns Exactly(w) or GreaterThan(bound).
    """
    d = config.dim
    if config.rank() != d:
        raise ValueError("generators must span the space")
    if (2 * bound + 1) ** d > ENUMERATION_LIMIT:
        raise BoundTooLargeError(f"(2*{bound}+1)^{d} functional candidates")
    if lattice.dim != d:
        raise ValueError("lattice dimension mismatch")
    basis = []
    for v in config.vectors:
        if matrix_rank([list(b) for b in basis] + [list(v)]) > len(basis):
            basis.append(v)
        if len(basis) == d:
            break
    dual_rows = matrix_inverse_rational([list(b) for b in basis])
    # functional with values `vals` on the basis: sum vals_i * (column i of inverse)
    dual_basis = [
        tuple(dual_rows[r][i] for r in range(d)) for i in range(d)
    ]
    best: Optional[int] = None
    for vals in itertools.product(range(-bound, bound + 1), repeat=d):
        if all(v == 0 for v in vals):
            continue
        f = tuple(
            sum(v * db[r] for v, db in zip(vals, dual_basis)) for r in range(d)
        )
        if any(rational_floor(x) != x for x in f):
            continue  # not integral on Z^d
        f = tuple(int(rational_floor(x)) for x in f)
        fw = sum(fi * wi for fi, wi in zip(f, lattice.w))
        if fw % lattice.q != 0:
            continue  # not integral on the extra generator w/q
        width = sum(abs(sum(fi * ui for fi, ui in zip(f, u))) for u in config.vectors)
        if width <= bound and (best is None or width < best):
            best = int(width)
    if best is None:
        return GreaterThan(bound)
    return Exactly(best)
