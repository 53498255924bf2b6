"""Named constructions: Cusick-style parallelepipeds with large first
minimum, the almost-coloopless zonotope family, and the zonotope of a
velocity vector with its lattice point count.
"""

import itertools
import math
from typing import Sequence

from ..exact import (
    Rational,
    echelon_transform,
    lr_projection,
    matrix_inverse_rational,
    rational_floor,
)
from .bodies import CenteredBody, LatticeDescription
from .configs import VectorConfiguration

ZERO = Rational(0)
HALF = Rational(1, 2)


def _prime_factors(q: int) -> list:
    factors = []
    rest = q
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            factors.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        factors.append(rest)
    return factors


def _is_prime(q: int) -> bool:
    return q >= 2 and _prime_factors(q) == [q]


def _euler_phi(q: int) -> int:
    phi = q
    for p in _prime_factors(q):
        phi = phi // p * (p - 1)
    return phi


def _unit_cube(d: int) -> CenteredBody:
    pairs = []
    for i in range(d):
        g = [0] * d
        g[i] = 1
        pairs.append((tuple(g), ZERO, Rational(1)))
    return CenteredBody(
        pairs=tuple(pairs),
        center=tuple([HALF] * d),
        bbox=(tuple([ZERO] * d), tuple([Rational(1)] * d)),
    )


def cusick_parallelepiped(q: int):
    """Unit cube over a dense superlattice with first minimum 1 - 2/q.

    Prime q: dimension (q-1)/2 with lattice vector (1, 2, ..., d)/q.
    Composite q: dimension phi(q)/2 + (number of prime factors); the lattice
    vector collects one unit representative per +- pair of primitive residues
    followed by q/p for each prime p dividing q.
    Returns (body, lattice).
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    if _is_prime(q):
        d = (q - 1) // 2
        w = tuple(range(1, d + 1))
    else:
        primes = _prime_factors(q)
        units = [a for a in range(1, q // 2 + 1) if math.gcd(a, q) == 1]
        w = tuple(units + [q // p for p in primes])
        d = _euler_phi(q) // 2 + len(primes)
        assert len(w) == d
    return _unit_cube(d), LatticeDescription(d, q, w)


def almost_coloopless_zonotope(d: int):
    """Prism over the (d-1)-dimensional difference-body hexagon analog, with
    exactly one coloop among its d+1 generators.

    Generators e_1..e_{d-1}, -(e_1+..+e_{d-1}), e_d; facets |x_i| <= 1,
    |x_i - x_j| <= 1 and 0 <= y <= 1; lattice Z^d + (1/d)<(1,..,d-1,1)>.
    Returns (body, lattice, configuration).
    """
    if d < 3 or not _is_prime(d):
        raise ValueError("d must be an odd prime")
    gens = []
    for i in range(d - 1):
        e = [0] * d
        e[i] = 1
        gens.append(tuple(e))
    gens.append(tuple([-1] * (d - 1) + [0]))
    last = [0] * d
    last[d - 1] = 1
    gens.append(tuple(last))
    config = VectorConfiguration.from_vectors(gens, dim=d)

    pairs = []
    one = Rational(1)
    for i in range(d - 1):
        g = [0] * d
        g[i] = 1
        pairs.append((tuple(g), -one, one))
    for i, j in itertools.combinations(range(d - 1), 2):
        g = [0] * d
        g[i], g[j] = 1, -1
        pairs.append((tuple(g), -one, one))
    g = [0] * d
    g[d - 1] = 1
    pairs.append((tuple(g), ZERO, one))
    body = CenteredBody(
        pairs=tuple(pairs),
        center=tuple([ZERO] * (d - 1) + [HALF]),
        bbox=(
            tuple([-one] * (d - 1) + [ZERO]),
            tuple([one] * d),
        ),
    )
    lattice = LatticeDescription(d, d, tuple(list(range(1, d)) + [1]))
    return body, lattice, config


def lr_zonotope(v: Sequence[int]):
    """Projection of the unit cube along v: generator configuration in
    Z^(n-1) plus its slab H-representation.

    Facet functionals pull back to v_j s_i - v_i s_j on the cube, whose range
    is [-v_i, v_j]; composing with the inverse of the unimodular projection
    extension makes them integral.  Returns (configuration, body).
    """
    vec = [int(x) for x in v]
    n = len(vec)
    proj = lr_projection(vec)  # validates v and is ext[1:] below
    d = n - 1
    gens = [tuple(proj[r][k] for r in range(d)) for k in range(n)]
    config = VectorConfiguration.from_vectors(gens, dim=d)

    # the unimodular matrix sending v to e_1; its inverse transports cube
    # functionals to the projected coordinates
    _, ext, _ = echelon_transform([[x] for x in vec])
    inv = matrix_inverse_rational(ext)
    pairs = []
    for i, j in itertools.combinations(range(n), 2):
        h = [0] * n
        h[i], h[j] = vec[j], -vec[i]
        # functional on the projected space: drop the first coordinate of
        # h * U^{-1}, which vanishes because h(v) = 0
        phi = []
        lead = sum(h[k] * inv[k][0] for k in range(n))
        assert lead == 0
        for c in range(1, n):
            val = sum(h[k] * inv[k][c] for k in range(n))
            assert rational_floor(val) == val
            phi.append(int(rational_floor(val)))
        pairs.append((tuple(phi), Rational(-vec[i]), Rational(vec[j])))
    lo = tuple(sum(min(g[r], 0) for g in gens) for r in range(d))
    hi = tuple(sum(max(g[r], 0) for g in gens) for r in range(d))
    center = tuple(Rational(l + h, 2) for l, h in zip(lo, hi))
    body = CenteredBody(pairs=tuple(pairs), center=center, bbox=(lo, hi))
    return config, body


def lattice_point_count(v: Sequence[int]) -> int:
    """Number of lattice points of the zonotope of v, by the gcd formula:
    the sum over nonempty subsets S of gcd(v_i : i in S)."""
    vec = [int(x) for x in v]
    if math.gcd(*vec) != 1:
        raise ValueError("velocity vector must be primitive")
    total = 0
    for size in range(1, len(vec) + 1):
        for subset in itertools.combinations(vec, size):
            total += math.gcd(*subset)
    return total


def lattice_points_enumerated(v: Sequence[int]) -> list:
    """Lattice points of the zonotope of v by direct H-representation scan."""
    _, body = lr_zonotope(v)
    lo, hi = body.bbox
    lattice = LatticeDescription(body.dim, 1, tuple([0] * body.dim))
    return [p for p in lattice.points_in_box(lo, hi) if body.contains(p)]
