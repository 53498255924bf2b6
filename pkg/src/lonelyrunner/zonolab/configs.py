"""Integer vector configurations: Gale duality, minors, and the lonely
vector property.

A configuration is a labeled multiset of vectors in Z^d.  Most predicates
here go through the Gale dual, whose columns record the coefficients of
integer linear dependences among the vectors.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..exact import integer_kernel_basis, matrix_rank


class RankDeficientError(ValueError):
    """Configuration does not span its ambient space."""


class UnknownLabelError(KeyError):
    pass


class NotColooplessError(ValueError):
    pass


class NotSortedError(ValueError):
    """Dependence coefficients are not strictly increasing positive."""


class DimensionMismatchError(ValueError):
    pass


def _as_vector(v) -> tuple:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class VectorConfiguration:
    """Labeled multiset of integer vectors in Z^dim.

    Labels are unique; vectors may repeat.  Order is significant only for
    labeling and serialization.
    """

    dim: int
    vectors: tuple
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(_as_vector(v) for v in self.vectors))
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if len(self.labels) != len(self.vectors):
            raise ValueError("one label per vector required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        for v in self.vectors:
            if len(v) != self.dim:
                raise ValueError(f"vector {v} not in Z^{self.dim}")

    @classmethod
    def from_vectors(cls, vectors, dim: Optional[int] = None) -> "VectorConfiguration":
        vecs = [_as_vector(v) for v in vectors]
        if dim is None:
            if not vecs:
                raise ValueError("dimension required for an empty configuration")
            dim = len(vecs[0])
        labels = [f"u{i + 1}" for i in range(len(vecs))]
        return cls(dim, tuple(vecs), tuple(labels))

    @property
    def n(self) -> int:
        return len(self.vectors)

    def rank(self) -> int:
        if not self.vectors:
            return 0
        return matrix_rank([list(v) for v in self.vectors])

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(label) from None

    def vector(self, label: str) -> tuple:
        return self.vectors[self.index_of(label)]

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "vectors": [list(v) for v in self.vectors],
            "labels": list(self.labels),
        }


def config_from_json_dict(data) -> VectorConfiguration:
    """Inverse of VectorConfiguration.to_json_dict."""
    try:
        dim = int(data["dim"])
        vectors = tuple(tuple(int(x) for x in v) for v in data["vectors"])
        labels = tuple(str(l) for l in data["labels"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed configuration document: {exc}") from exc
    return VectorConfiguration(dim, vectors, labels)


def gale_dual(config: VectorConfiguration) -> VectorConfiguration:
    """Dual configuration in Z^(n-d) whose functional values on a saturated
    dependence basis are the dependences of the input.

    Dual vector i is column i of the canonical kernel basis of the d x n
    coordinate matrix, so dependences of U correspond to integer functionals
    on the dual and vice versa.  Labels carry over.
    """
    d, n = config.dim, config.n
    if config.rank() != d:
        raise RankDeficientError(f"rank {config.rank()} < ambient dimension {d}")
    coord_rows = [[config.vectors[k][r] for k in range(n)] for r in range(d)]
    kernel = integer_kernel_basis(coord_rows)
    corank = len(kernel)
    dual_vectors = tuple(
        tuple(kernel[r][k] for r in range(corank)) for k in range(n)
    )
    return VectorConfiguration(corank, dual_vectors, config.labels)


def _is_zero(v: tuple) -> bool:
    return all(x == 0 for x in v)


def _neg(v: tuple) -> tuple:
    return tuple(-x for x in v)


def is_coloopless(config: VectorConfiguration) -> bool:
    """True iff removing any single vector keeps the rank at d.

    Equivalent to the Gale dual having no zero vector; the rank form is used
    directly so that corank-zero configurations come out right too.
    """
    d = config.dim
    if config.rank() != d:
        raise RankDeficientError(f"rank {config.rank()} < ambient dimension {d}")
    vectors = [list(v) for v in config.vectors]
    for i in range(len(vectors)):
        rest = vectors[:i] + vectors[i + 1:]
        if not rest or matrix_rank(rest) != d:
            return False
    return True


def is_cosimple(config: VectorConfiguration) -> bool:
    """True iff some fully supported dependence has pairwise distinct
    absolute coefficients: the Gale dual has no zero vector and no two
    vectors equal or opposite."""
    dual = gale_dual(config)
    for v in dual.vectors:
        if _is_zero(v):
            return False
    for a, b in itertools.combinations(dual.vectors, 2):
        if a == b or a == _neg(b):
            return False
    return True


def deletion(config: VectorConfiguration, label: str) -> VectorConfiguration:
    i = config.index_of(label)
    return VectorConfiguration(
        config.dim,
        config.vectors[:i] + config.vectors[i + 1:],
        config.labels[:i] + config.labels[i + 1:],
    )


def diagonal(
    config: VectorConfiguration, label_u: str, label_v: str, sign: str
) -> VectorConfiguration:
    """Replace u, v by u+v (sign "+") or u-v (sign "-"), keeping the rest."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    i = config.index_of(label_u)
    j = config.index_of(label_v)
    if i == j:
        raise ValueError("diagonal needs two distinct labels")
    u, v = config.vectors[i], config.vectors[j]
    merged = tuple(a + b if sign == "+" else a - b for a, b in zip(u, v))
    vectors, labels = [], []
    for k in range(config.n):
        if k == j:
            continue
        if k == i:
            vectors.append(merged)
            labels.append(f"{label_u}{sign}{label_v}")
        else:
            vectors.append(config.vectors[k])
            labels.append(config.labels[k])
    return VectorConfiguration(config.dim, tuple(vectors), tuple(labels))


def doubled_config(config: VectorConfiguration) -> VectorConfiguration:
    """The size-|S|^2 multiset {2u} + {u+v, one of u-v / v-u per pair}.

    The difference sign is fixed lexicographically; the lonely vector
    property is insensitive to the choice.
    """
    vectors, labels = [], []
    for u, lu in zip(config.vectors, config.labels):
        vectors.append(tuple(2 * x for x in u))
        labels.append(f"2*{lu}")
    for (i, j) in itertools.combinations(range(config.n), 2):
        u, v = config.vectors[i], config.vectors[j]
        lu, lv = config.labels[i], config.labels[j]
        vectors.append(tuple(a + b for a, b in zip(u, v)))
        labels.append(f"{lu}+{lv}")
        diff = tuple(a - b for a, b in zip(u, v))
        if diff >= _neg(diff):
            vectors.append(diff)
            labels.append(f"{lu}-{lv}")
        else:
            vectors.append(_neg(diff))
            labels.append(f"{lv}-{lu}")
    return VectorConfiguration(config.dim, tuple(vectors), tuple(labels))


def _direction_key(v: tuple, signed: bool) -> tuple:
    """Proportionality class key: primitive direction, sign-normalized unless
    positive multiples are to be distinguished.  Zero is its own class."""
    if _is_zero(v):
        return ("zero",)
    g = math.gcd(*(abs(x) for x in v))
    prim = tuple(x // g for x in v)
    if not signed:
        for x in prim:
            if x:
                if x < 0:
                    prim = _neg(prim)
                break
    return ("dir", prim)


def _has_lonely_class(vectors: Iterable[tuple], signed: bool) -> bool:
    counts: dict = {}
    for v in vectors:
        key = _direction_key(v, signed)
        counts[key] = counts.get(key, 0) + 1
    return any(c == 1 for c in counts.values())


def has_lvp(config: VectorConfiguration) -> bool:
    """Lonely vector property: some element of the doubled configuration is
    linearly independent from every other element.

    Proportional means the pair spans at most a line, so the zero vector is
    proportional to everything and its presence (in a doubled configuration
    of size >= 2) kills loneliness outright.  This is the reading under
    which the cosimple-minor equivalence holds verbatim.
    """
    doubled = doubled_config(config).vectors
    if any(_is_zero(v) for v in doubled):
        return len(doubled) == 1
    return _has_lonely_class(doubled, signed=False)


def has_lvp_symmetric(config: VectorConfiguration) -> bool:
    """LVP via the symmetric pairwise-sum criterion.

    Requires S with no zero and no equal-or-opposite pair.  Forms
    Sbar = S + (-S) + {0} and all unordered pairwise sums (self-pairs
    included), then asks for an element that is a positive rational multiple
    of no other.  Agrees with has_lvp for |S| >= 2; the singleton {u} is a
    boundary case where the doubled criterion is vacuously true but every
    sum here pairs u with 2u.
    """
    for v in config.vectors:
        if _is_zero(v):
            raise ValueError("symmetric criterion requires no zero vector")
    for a, b in itertools.combinations(config.vectors, 2):
        if a == b or a == _neg(b):
            raise ValueError("symmetric criterion requires no equal-or-opposite pair")
    symmetrized = [tuple([0] * config.dim)]
    for v in config.vectors:
        symmetrized.append(v)
        symmetrized.append(_neg(v))
    sums = [
        tuple(x + y for x, y in zip(a, b))
        for a, b in itertools.combinations_with_replacement(symmetrized, 2)
    ]
    return _has_lonely_class(sums, signed=True)


def rectangle_config(a: int, b: int) -> VectorConfiguration:
    """Nonzero lattice points of [-a,a] x [-b,b], one per +- pair."""
    if a < 1 or b < 1:
        raise ValueError("rectangle sides must be >= 1")
    vectors = []
    for x in range(0, a + 1):
        for y in range(-b, b + 1):
            if x == 0 and y <= 0:
                continue
            vectors.append((x, y))
    return VectorConfiguration.from_vectors(vectors, dim=2)


def triangular_disk_config(max_norm_sq: int) -> VectorConfiguration:
    """Nonzero points of the triangular lattice with a^2+ab+b^2 <= r^2, one
    per +- pair, in lattice coordinates (proportionality is basis-free)."""
    if max_norm_sq < 1:
        raise ValueError("radius bound must be >= 1")
    bound = int(math.isqrt(4 * max_norm_sq // 3)) + 2
    vectors = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) <= (-a, -b):
                continue  # one representative per +- pair, zero dropped
            if a * a + a * b + b * b <= max_norm_sq:
                vectors.append((a, b))
    vectors.sort()
    return VectorConfiguration.from_vectors(vectors, dim=2)


def all_minors(config: VectorConfiguration):
    """Every single deletion and single diagonal (both signs), lazily."""
    for label in config.labels:
        yield deletion(config, label)
    for lu, lv in itertools.combinations(config.labels, 2):
        yield diagonal(config, lu, lv, "+")
        yield diagonal(config, lu, lv, "-")


def cosimple_minor_exists(config: VectorConfiguration) -> bool:
    """True iff some single deletion or diagonal of the configuration is
    cosimple.  Minors that drop rank do not count."""
    if config.rank() != config.dim:
        raise RankDeficientError("configuration must have full rank")
    for minor in all_minors(config):
        try:
            if is_cosimple(minor):
                return True
        except RankDeficientError:
            continue
    return False


def _dot(a: tuple, b: tuple) -> int:
    return sum(x * y for x, y in zip(a, b))


def _angle_smaller(p1, p2) -> bool:
    """Compare angles given as (dot, |a|^2 |b|^2) pairs without radicals:
    smaller angle means larger cosine, compared by sign then cross-squares."""
    d1, n1 = p1
    d2, n2 = p2
    s1 = (d1 > 0) - (d1 < 0)
    s2 = (d2 > 0) - (d2 < 0)
    if s1 != s2:
        return s1 > s2
    lhs = d1 * d1 * n2
    rhs = d2 * d2 * n1
    if s1 >= 0:
        return lhs > rhs
    return lhs < rhs


def reduce_to_lr(config: VectorConfiguration):
    """Diagonal steps shrinking a coloopless configuration to d+1 generators.

    Repeatedly finds the pair of Gale dual vectors (up to sign) at the
    smallest nonzero angle and applies the matching diagonal; every
    intermediate configuration stays coloopless.  Returns (steps, final)
    where steps is a list of (label_u, label_v, sign).
    """
    if not is_coloopless(config):
        raise NotColooplessError("input configuration must be coloopless")
    steps = []
    current = config
    while current.n > current.dim + 1:
        dual = gale_dual(current)
        best = None
        best_pair = None
        for i, j in itertools.combinations(range(current.n), 2):
            a, b = dual.vectors[i], dual.vectors[j]
            na, nb = _dot(a, a), _dot(b, b)
            d = _dot(a, b)
            # contraction along a+b (acute pair) is the negative diagonal,
            # along a-b the positive one
            sign = "-" if d >= 0 else "+"
            d = abs(d)
            if d * d == na * nb:
                continue  # parallel: zero angle, excluded
            key = (d, na * nb)
            if best is None or _angle_smaller(key, best):
                best = key
                best_pair = (current.labels[i], current.labels[j], sign)
        if best_pair is None:
            raise NotColooplessError("no nonzero-angle dual pair available")
        current = diagonal(current, best_pair[0], best_pair[1], best_pair[2])
        if not is_coloopless(current):
            raise NotColooplessError(
                f"diagonal at {best_pair} broke colooplessness"
            )
        steps.append(best_pair)
    return steps, current


def width_with_functional(config: VectorConfiguration, f: Sequence[int]):
    """Width of the zonotope of the configuration along f: sum of |f(u)|."""
    func = tuple(f)
    if len(func) != config.dim:
        raise DimensionMismatchError("functional has wrong dimension")
    return sum(abs(_dot(func, u)) for u in config.vectors)


def width3_diagonal(
    config: VectorConfiguration, dependence: Sequence[int]
) -> VectorConfiguration:
    """Negative diagonal at the two largest dependence coefficients.

    The dependence must be strictly increasing positive in the given label
    order (relabel/flip signs beforehand); the resulting zonotope then has
    lattice width at least 3 in its ambient lattice.
    """
    coeffs = [int(c) for c in dependence]
    if len(coeffs) != config.n:
        raise ValueError("one coefficient per vector required")
    if any(c <= 0 for c in coeffs) or any(
        coeffs[i] >= coeffs[i + 1] for i in range(len(coeffs) - 1)
    ):
        raise NotSortedError("dependence must be strictly increasing positive")
    residual = [
        sum(c * u[r] for c, u in zip(coeffs, config.vectors))
        for r in range(config.dim)
    ]
    if any(residual):
        raise ValueError("coefficients are not a linear dependence")
    return diagonal(config, config.labels[-2], config.labels[-1], "-")


def _facet_normals(config: VectorConfiguration) -> list:
    d = config.dim
    if d == 1:
        return [(1,)]
    if d > 4:
        raise ValueError("facet-normal enumeration limited to dimension <= 4")
    normals = set()
    for subset in itertools.combinations(range(config.n), d - 1):
        rows = [list(config.vectors[k]) for k in subset]
        kernel = integer_kernel_basis(rows)
        if len(kernel) != 1:
            continue  # subset does not span a hyperplane
        normals.add(_direction_key(tuple(kernel[0]), signed=False)[1])
    return sorted(normals)


def zonotope_contains(
    inner: VectorConfiguration,
    outer: VectorConfiguration,
    translation: Optional[Sequence] = None,
) -> bool:
    """Support-function containment test: translated Z(inner) inside Z(outer).

    Checks every facet normal f of the outer zonotope: the centered support
    sum |f(u)|/2 of the inner plus the center offset must not exceed the
    outer's.  The outer must be full-dimensional for the slab test to bound.
    """
    if inner.dim != outer.dim:
        raise DimensionMismatchError(f"{inner.dim} != {outer.dim}")
    if outer.rank() != outer.dim:
        raise RankDeficientError("outer zonotope must be full-dimensional")
    d = inner.dim
    shift = tuple(translation) if translation is not None else tuple([0] * d)
    if len(shift) != d:
        raise DimensionMismatchError("translation has wrong dimension")
    # center difference doubled, to stay in integers when shifts are integer
    twice_offset = [
        sum(u[r] for u in inner.vectors) + 2 * shift[r]
        - sum(u[r] for u in outer.vectors)
        for r in range(d)
    ]
    for f in _facet_normals(outer):
        inner_sum = sum(abs(_dot(f, u)) for u in inner.vectors)
        outer_sum = sum(abs(_dot(f, u)) for u in outer.vectors)
        if abs(_dot(f, twice_offset)) + inner_sum > outer_sum:
            return False
    return True


def _admissible_subpool(vectors: Iterable[tuple]) -> list:
    pool = []
    seen = set()
    for v in vectors:
        if _is_zero(v):
            continue
        if v in seen or _neg(v) in seen:
            continue
        seen.add(v)
        pool.append(v)
    return pool


def lvp_counterexample_search(
    pool: VectorConfiguration, size_limit: int
) -> Optional[VectorConfiguration]:
    """Search the pool for S with |S| <= size_limit and no lonely vector.

    The pool is first reduced to one representative per +- pair with zeros
    dropped.  Only subsets spanning the full ambient dimension count: a
    collinear S fails LVP vacuously and reproduces nothing.  If the whole
    pool already fails LVP and fits the limit it is returned; otherwise small
    pools (<= 20 classes) are searched exhaustively by increasing subset
    size.  Returns None when nothing is found.
    """
    candidates = _admissible_subpool(pool.vectors)
    full = VectorConfiguration.from_vectors(candidates, dim=pool.dim)
    if (
        len(candidates) <= size_limit
        and full.rank() == pool.dim
        and not has_lvp(full)
    ):
        return full
    if len(candidates) > 20:
        return None
    limit = min(size_limit, len(candidates))
    for size in range(1, limit + 1):
        for subset in itertools.combinations(candidates, size):
            config = VectorConfiguration.from_vectors(subset, dim=pool.dim)
            if config.rank() < pool.dim:
                continue
            if not has_lvp(config):
                return config
    return None
