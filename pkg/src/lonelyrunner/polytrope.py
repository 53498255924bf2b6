"""Polytropes as difference-bound matrices on the quotient R^n / R(1,...,1).

A polytrope is cut out by constraints x_j - x_i <= B[i][j]; the class is
closed under intersection (entrywise minimum) and, crucially, under removing
a certificate polytrope: the leftover region splits into farthest-facet
pieces whose extra constraints are again difference bounds.

Sign convention, used consistently everywhere: B[i][j] is the maximum of
x_j - x_i over the polytrope.  Points of the quotient are represented with
first coordinate zero.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .exact import Rational, format_rational

ZERO = Rational(0)


class NotCanonicalError(ValueError):
    """Operation requires a canonicalized polytrope."""


class CoverMode(Enum):
    """Open: strict loneliness, closed cells.  Closed: weak loneliness."""

    OPEN = "open"
    CLOSED = "closed"


def normalize_point(x: Sequence) -> tuple:
    """Canonical representative of a quotient point: first coordinate 0."""
    xs = [Rational(c) for c in x]
    base = xs[0]
    return tuple(c - base for c in xs)


@dataclass(frozen=True)
class Polytrope:
    """bounds[i][j] = upper bound for x_j - x_i (diagonal fixed at 0)."""

    bounds: tuple
    canonical: bool = False

    @property
    def n(self) -> int:
        return len(self.bounds)

    @staticmethod
    def from_rows(rows, canonical: bool = False) -> "Polytrope":
        return Polytrope(
            tuple(tuple(Rational(c) for c in row) for row in rows), canonical
        )

    def require_canonical(self) -> None:
        if not self.canonical:
            raise NotCanonicalError("polytrope must be canonicalized first")

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        pt = normalize_point(x)
        b = self.bounds
        n = self.n
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                diff = pt[j] - pt[i]
                if diff > b[i][j] or (strict and diff == b[i][j]):
                    return False
        return True

    def is_full_dimensional(self) -> bool:
        """Full-dimensional in the quotient: all opposite bound pairs slack."""
        self.require_canonical()
        b = self.bounds
        n = self.n
        return all(
            b[i][j] + b[j][i] > ZERO for i in range(n) for j in range(i + 1, n)
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "bounds": [[format_rational(c) for c in row] for row in self.bounds],
        }


def canonicalize(p: Polytrope) -> Optional[Polytrope]:
    """All-pairs tightening of the bound matrix; None when empty.

    Floyd-Warshall closure over the constraint graph; the polytrope is empty
    exactly when a negative cycle appears (diagonal drops below zero).
    """
    if p.canonical:
        return p
    n = p.n
    b = [list(row) for row in p.bounds]
    for k in range(n):
        bk = b[k]
        for i in range(n):
            row = b[i]
            bik = row[k]
            for j in range(n):
                alt = bik + bk[j]
                if alt < row[j]:
                    row[j] = alt
            if row[i] < ZERO:
                return None
    return Polytrope(tuple(tuple(row) for row in b), canonical=True)


def min_vertices(p: Polytrope) -> list:
    """The n tropical generators: i-th vertex is row i of B, i-th entry 0."""
    p.require_canonical()
    return [normalize_point(row) for row in p.bounds]


def interior_point(p: Polytrope) -> tuple:
    """Barycenter of the min-vertices: relative-interior point of p."""
    verts = min_vertices(p)
    n = p.n
    return normalize_point(
        tuple(sum((v[j] for v in verts), ZERO) / n for j in range(n))
    )


def _tighten(b, edges) -> bool:
    """Impose difference constraints on a canonical bound matrix, in place.

    Each edge (p, q, c) means x_q - x_p <= c.  The matrix stays canonical
    after every accepted edge; returns False as soon as the region is empty.
    """
    n = len(b)
    for p, q, c in edges:
        if c >= b[p][q]:
            continue
        if c + b[q][p] < ZERO:
            return False
        b[p][q] = c
        bq = b[q]
        for i in range(n):
            row = b[i]
            base = row[p] + c
            for j in range(n):
                alt = base + bq[j]
                if alt < row[j]:
                    row[j] = alt
    return True


def subtract_certificate(y: Polytrope, t: Polytrope, mode: CoverMode) -> list:
    """Split y minus (the interior of) t into polytrope pieces.

    One piece per ordered pair (i, j): the points of y on or beyond t's
    (i, j) facet whose violation of that bound is at least the violation of
    every bound sharing an index with it (the farthest-facet region; for
    certificate polytropes, whose bound matrix has the product form
    A_i - C_j, this is equivalent to comparing against all bounds).  In
    CLOSED mode only full-dimensional pieces are kept.
    """
    y.require_canonical()
    t.require_canonical()
    if y.n != t.n:
        raise ValueError("dimension mismatch")
    n = y.n
    yb = y.bounds
    tb = t.bounds
    pieces = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            edges = [(j, i, -tb[i][j])]
            tij = tb[i][j]
            for k in range(n):
                if k == i or k == j:
                    continue
                edges.append((k, i, tb[k][j] - tij))
                edges.append((j, k, tb[i][k] - tij))
            b = [list(row) for row in yb]
            if not _tighten(b, edges):
                continue
            piece = Polytrope(tuple(tuple(row) for row in b), canonical=True)
            if mode is CoverMode.CLOSED and not piece.is_full_dimensional():
                continue
            pieces.append(piece)
    return pieces
