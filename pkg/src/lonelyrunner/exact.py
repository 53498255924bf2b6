"""Exact rational scalars and small integer linear algebra.

Everything downstream (interval covers, polytropes, zonotope lattices) runs on
the `Rational` type defined here; no floating point enters any computation.
`Rational` is gmpy2's mpq when available (much faster in the decider's hot
loops) and falls back to fractions.Fraction.  Both keep lowest terms and a
positive denominator, and both print as ``p/q`` (or ``p`` when q == 1).
"""

import math
from enum import Enum
from typing import Callable, NamedTuple, Sequence, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a normal install requirement
    from fractions import Fraction as Rational

RationalLike = Union[int, str, "Rational"]

ZERO = Rational(0)
ONE = Rational(1)
HALF = Rational(1, 2)


class Comparison(Enum):
    """Three-way comparison of a hidden value against a query."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class Interval(NamedTuple):
    """Closed rational interval [lo, hi]."""

    lo: "Rational"
    hi: "Rational"


class InconsistentOracleError(RuntimeError):
    """The search oracle returned something other than a Comparison."""


class NonPrimitiveError(ValueError):
    """Integer vector was expected to have gcd 1."""


def parse_rational(text: str) -> "Rational":
    """Parse ``p/q`` or ``p`` into an exact rational."""
    return Rational(text.strip())


def format_rational(q) -> str:
    """Exact string form, ``p/q`` or ``p`` when the denominator is 1."""
    return str(Rational(q))


def rational_floor(q) -> int:
    q = Rational(q)
    return int(q.numerator // q.denominator)


def rational_ceil(q) -> int:
    q = Rational(q)
    return -int((-q.numerator) // q.denominator)


def dist_to_integers(q) -> "Rational":
    """Distance from q to the nearest integer, in [0, 1/2]."""
    q = Rational(q)
    frac = q - (q.numerator // q.denominator)
    other = 1 - frac
    return frac if frac <= other else other


def stern_brocot_search(
    oracle: Callable[["Rational"], Comparison],
    max_denominator: int,
):
    """Binary search for a rational in (0, 1/2) via mediant descent.

    The oracle reports how the hidden value compares to the query.  If the
    hidden value is a rational with denominator <= max_denominator the exact
    value is found (using at most numerator+denominator oracle calls);
    otherwise the bracketing Interval at the denominator cap is returned.
    """
    if max_denominator < 2:
        raise ValueError("max_denominator must be at least 2")
    lo_n, lo_d = 0, 1
    hi_n, hi_d = 1, 2
    while True:
        med_n, med_d = lo_n + hi_n, lo_d + hi_d
        if med_d > max_denominator:
            return Interval(Rational(lo_n, lo_d), Rational(hi_n, hi_d))
        answer = oracle(Rational(med_n, med_d))
        if answer is Comparison.EQUAL:
            return Rational(med_n, med_d)
        if answer is Comparison.LESS:
            hi_n, hi_d = med_n, med_d
        elif answer is Comparison.GREATER:
            lo_n, lo_d = med_n, med_d
        else:
            raise InconsistentOracleError(f"oracle returned {answer!r}")


# ---------------------------------------------------------------------------
# Integer matrices (lists of row lists).  Sizes here are tiny, so plain
# fraction-free row reduction with exact bignums is both simple and fast.
# ---------------------------------------------------------------------------

IntMatrix = Sequence[Sequence[int]]


def _xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with x*a + y*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matrix_multiply(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(row))) for j in range(cols)]
        for row in a
    ]


def echelon_transform(rows: IntMatrix):
    """Row Hermite form with transform: returns (H, U, rank), U @ rows == H.

    U is unimodular; the nonzero rows of H sit on top, pivots positive,
    entries above each pivot reduced into [0, pivot).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(map(int, r)) for r in rows]
    u = identity_matrix(m)
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if h[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            h[r], h[pivot] = h[pivot], h[r]
            u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, m):
            if not h[i][c]:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            hr, hi = h[r], h[i]
            ur, ui = u[r], u[i]
            h[r] = [x * hr[j] + y * hi[j] for j in range(n)]
            h[i] = [p * hi[j] - q * hr[j] for j in range(n)]
            u[r] = [x * ur[j] + y * ui[j] for j in range(m)]
            u[i] = [p * ui[j] - q * ur[j] for j in range(m)]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [h[i][j] - f * h[r][j] for j in range(n)]
                u[i] = [u[i][j] - f * u[r][j] for j in range(m)]
        r += 1
    return h, u, r


def matrix_rank(rows: IntMatrix) -> int:
    _, _, rank = echelon_transform(rows)
    return rank


def hermite_form(rows: IntMatrix) -> list[list[int]]:
    h, _, rank = echelon_transform(rows)
    return h[:rank]


def integer_kernel_basis(rows: IntMatrix) -> list[list[int]]:
    """Saturated basis of {x integer : rows @ x == 0}.

    The result spans the full sublattice of integer kernel vectors (not just
    a finite-index part of it); rows are returned in Hermite form so the
    basis is canonical.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if n == 0:
        return []
    transposed = [[rows[i][j] for i in range(m)] for j in range(n)]
    _, u, rank = echelon_transform(transposed)
    kernel = u[rank:]
    if not kernel:
        return []
    return hermite_form(kernel)


def invariant_factors(rows: IntMatrix) -> list[int]:
    """Smith normal form diagonal d_1 | d_2 | ... (positive, nonzero only)."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    result = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            for i in range(t + 1, m):
                if not a[i][t]:
                    continue
                # plain elimination when the pivot divides; the xgcd mix
                # rewrites row t and would cycle once the pivot is stuck
                if a[i][t] % a[t][t] == 0:
                    q = a[i][t] // a[t][t]
                    at = a[t]
                    a[i] = [a[i][j] - q * at[j] for j in range(n)]
                    continue
                g, x, y = _xgcd(a[t][t], a[i][t])
                p, q = a[t][t] // g, a[i][t] // g
                at, ai = a[t], a[i]
                a[t] = [x * at[j] + y * ai[j] for j in range(n)]
                a[i] = [p * ai[j] - q * at[j] for j in range(n)]
            for j in range(t + 1, n):
                if not a[t][j]:
                    continue
                if a[t][j] % a[t][t] == 0:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    continue
                g, x, y = _xgcd(a[t][t], a[t][j])
                p, q = a[t][t] // g, a[t][j] // g
                for row in a:
                    rt, rj = row[t], row[j]
                    row[t] = x * rt + y * rj
                    row[j] = p * rj - q * rt
            if any(a[i][t] for i in range(t + 1, m)):
                continue
            d = a[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [a[t][j] + a[bad][j] for j in range(n)]
        result.append(abs(a[t][t]))
        t += 1
    return result


def lr_projection(v: Sequence[int]) -> list[list[int]]:
    """Integer (n-1) x n matrix P with P v == 0 and P(Z^n) == Z^(n-1).

    P is the bottom of a unimodular matrix sending v to e_1, so it projects
    Z^n onto Z^(n-1) along v with all elementary divisors equal to 1.
    """
    vec = [int(x) for x in v]
    if len(vec) < 2:
        raise ValueError("need at least two velocities")
    if any(x <= 0 for x in vec):
        raise ValueError("velocities must be positive")
    if math.gcd(*vec) != 1:
        raise NonPrimitiveError(f"gcd{tuple(vec)} != 1")
    column = [[x] for x in vec]
    h, u, _ = echelon_transform(column)
    assert h[0][0] == 1
    return [row[:] for row in u[1:]]


def matrix_inverse_rational(rows) -> list[list]:
    """Exact inverse of a square matrix by Gauss-Jordan over the rationals."""
    n = len(rows)
    a = [[Rational(x) for x in row] + [Rational(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]
