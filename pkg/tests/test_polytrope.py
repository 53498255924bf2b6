"""Difference-bound polytropes: closure, generators, certificate subtraction.

Product-form certificates (bounds U_j - L_i from a box) admit an exact
membership oracle, so subtract_certificate is checked by point sampling:
strictly-inside points land in no piece, outside points land in at least one.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lonelyrunner.exact import Rational
from lonelyrunner.polytrope import (
    CoverMode,
    NotCanonicalError,
    Polytrope,
    canonicalize,
    interior_point,
    min_vertices,
    normalize_point,
    subtract_certificate,
)

small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=8)
pos_fracs = st.fractions(
    min_value=Fraction(1, 8), max_value=2, max_denominator=8
)


@st.composite
def bound_matrices(draw, max_n=4):
    n = draw(st.integers(min_value=2, max_value=max_n))
    rows = [
        [
            Rational(0) if i == j else Rational(draw(small_fracs))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return Polytrope.from_rows(rows)


@st.composite
def boxes(draw, n):
    # product-form polytrope from a box [L_i, U_i]: x_j - x_i <= U_j - L_i
    lo = [Rational(draw(small_fracs)) for _ in range(n)]
    hi = [l + Rational(draw(pos_fracs)) for l in lo]
    rows = [
        [Rational(0) if i == j else hi[j] - lo[i] for j in range(n)]
        for i in range(n)
    ]
    t = canonicalize(Polytrope.from_rows(rows))
    assert t is not None
    assert t.bounds == tuple(tuple(r) for r in rows)  # box form is closed
    return t


def big_box(n, half_width=10):
    rows = [
        [Rational(0) if i == j else Rational(2 * half_width) for j in range(n)]
        for i in range(n)
    ]
    return Polytrope.from_rows(rows, canonical=True)


class TestNormalizePoint:
    def test_first_coordinate_zero(self):
        pt = normalize_point([Fraction(1, 2), 2, -1])
        assert pt[0] == 0
        assert pt[1] - pt[0] == Fraction(3, 2)
        assert pt[2] - pt[1] == -3


class TestCanonicalize:
    def test_triangle_tightening(self):
        p = Polytrope.from_rows([[0, 1, 5], [9, 0, 1], [9, 9, 0]])
        c = canonicalize(p)
        assert c is not None
        assert c.bounds[0][2] == 2  # through the middle index

    def test_detects_empty(self):
        p = Polytrope.from_rows([[0, -1], [0, 0]])
        assert canonicalize(p) is None

    @given(bound_matrices())
    def test_idempotent_and_set_preserving(self, p):
        c = canonicalize(p)
        if c is None:
            return
        assert canonicalize(c) is c
        # closure satisfies every triangle inequality
        b = c.bounds
        n = c.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert b[i][j] <= b[i][k] + b[k][j]

    @given(bound_matrices(max_n=3), st.lists(small_fracs, min_size=3, max_size=3))
    def test_membership_unchanged(self, p, coords):
        c = canonicalize(p)
        if c is None or p.n != 3:
            return
        x = [Rational(f) for f in coords]
        assert p.contains(x) == c.contains(x)


class TestGenerators:
    def test_requires_canonical(self):
        p = Polytrope.from_rows([[0, 1], [1, 0]])
        with pytest.raises(NotCanonicalError):
            min_vertices(p)
        with pytest.raises(NotCanonicalError):
            p.is_full_dimensional()

    @given(bound_matrices())
    def test_vertices_and_barycenter_inside(self, p):
        c = canonicalize(p)
        if c is None:
            return
        for v in min_vertices(c):
            assert c.contains(v)
        assert c.contains(interior_point(c))

    @given(bound_matrices())
    def test_barycenter_strict_when_full_dimensional(self, p):
        # vertex j satisfies the (i, j) constraint strictly whenever the
        # opposite bounds have slack, so the vertex mean is strictly inside
        c = canonicalize(p)
        if c is None or not c.is_full_dimensional():
            return
        assert c.contains(interior_point(c), strict=True)

    def test_degenerate_has_no_strict_point(self):
        p = canonicalize(Polytrope.from_rows([[0, 2], [-2, 0]]))
        assert p is not None
        assert not p.is_full_dimensional()
        assert p.contains(interior_point(p))
        assert not p.contains(interior_point(p), strict=True)


class TestSubtract:
    def test_requires_canonical_and_matching_n(self):
        raw = Polytrope.from_rows([[0, 1], [1, 0]])
        box = big_box(2)
        with pytest.raises(NotCanonicalError):
            subtract_certificate(raw, box, CoverMode.OPEN)
        with pytest.raises(ValueError):
            subtract_certificate(big_box(3), box, CoverMode.OPEN)

    def test_pieces_only_tighten(self):
        t = canonicalize(
            Polytrope.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        )
        y = big_box(3)
        for piece in subtract_certificate(y, t, CoverMode.OPEN):
            for i in range(3):
                for j in range(3):
                    assert piece.bounds[i][j] <= y.bounds[i][j]

    @given(st.data())
    @settings(max_examples=40)
    def test_membership_against_box_oracle(self, data):
        n = data.draw(st.integers(min_value=2, max_value=4))
        t = data.draw(boxes(n))
        y = big_box(n)
        pieces = subtract_certificate(y, t, CoverMode.OPEN)
        for _ in range(6):
            x = [
                Rational(data.draw(small_fracs, label="coord"))
                for _ in range(n)
            ]
            hits = sum(piece.contains(x) for piece in pieces)
            if t.contains(x, strict=True):
                assert hits == 0
            elif not t.contains(x):
                assert hits >= 1, (t.bounds, x)

    @given(st.data())
    @settings(max_examples=25)
    def test_closed_mode_keeps_full_dimensional_only(self, data):
        n = data.draw(st.integers(min_value=2, max_value=3))
        t = data.draw(boxes(n))
        pieces = subtract_certificate(big_box(n), t, CoverMode.CLOSED)
        for piece in pieces:
            assert piece.is_full_dimensional()
