"""Vector configurations, Gale duality, minors, LVP, and the zonotope lab.

Coloopless has an implementation-independent oracle (no deletion drops the
rank), so the Gale characterization is tested three ways.  The worked
example with generators (1,2), (2,1), (1,-2), (-2,1) and dependence
(1,4,7,8) threads through several classes.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lonelyrunner.exact import Rational, integer_kernel_basis
from lonelyrunner.zonolab import (
    BoundTooLargeError,
    DimensionMismatchError,
    Exactly,
    GreaterThan,
    LatticeDescription,
    NotColooplessError,
    NotSortedError,
    RankDeficientError,
    UnknownLabelError,
    VectorConfiguration,
    all_minors,
    almost_coloopless_zonotope,
    config_from_json_dict,
    cosimple_minor_exists,
    cusick_parallelepiped,
    deletion,
    diagonal,
    doubled_config,
    first_c_minimum,
    gale_dual,
    has_lvp,
    has_lvp_symmetric,
    is_coloopless,
    is_cosimple,
    lattice_point_count,
    lattice_points_enumerated,
    lattice_width_upto,
    lr_zonotope,
    lvp_counterexample_search,
    rectangle_config,
    reduce_to_lr,
    successive_minima_2d,
    triangular_disk_config,
    width3_diagonal,
    width_with_functional,
    zonotope_contains,
)

Z2 = LatticeDescription(2, 1, (0, 0))


def worked_example():
    return VectorConfiguration.from_vectors([(1, 2), (2, 1), (1, -2), (-2, 1)])


small_entries = st.integers(min_value=-3, max_value=3)


@st.composite
def configurations(draw, max_n=6, max_d=3, full_rank=False):
    d = draw(st.integers(min_value=1, max_value=max_d))
    n = draw(st.integers(min_value=d if full_rank else 1, max_value=max_n))
    vecs = [
        tuple(draw(small_entries) for _ in range(d)) for _ in range(n)
    ]
    cfg = VectorConfiguration.from_vectors(vecs, dim=d)
    if full_rank and cfg.rank() != d:
        # pad with unit vectors until the span is full
        vecs = vecs + [
            tuple(int(i == j) for j in range(d)) for i in range(d)
        ]
        cfg = VectorConfiguration.from_vectors(vecs, dim=d)
    return cfg


def coloop_labels(cfg):
    """Independent oracle: a coloop is a generator whose deletion drops rank."""
    r = cfg.rank()
    return [lab for lab in cfg.labels if deletion(cfg, lab).rank() < r]


class TestVectorConfiguration:
    def test_validation(self):
        with pytest.raises(ValueError):
            VectorConfiguration(2, ((1, 2), (3, 4)), ("a", "a"))
        with pytest.raises(ValueError):
            VectorConfiguration(2, ((1, 2, 3),), ("a",))
        with pytest.raises(ValueError):
            VectorConfiguration(2, ((1, 2),), ("a", "b"))
        with pytest.raises(ValueError):
            VectorConfiguration.from_vectors([])

    def test_labels_and_lookup(self):
        cfg = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert cfg.labels == ("u1", "u2")
        assert cfg.vector("u2") == (0, 1)
        assert cfg.index_of("u1") == 0
        with pytest.raises(UnknownLabelError):
            cfg.vector("zz")

    def test_rank(self):
        assert VectorConfiguration.from_vectors([(1, 0), (0, 1)]).rank() == 2
        assert VectorConfiguration.from_vectors([(1, 0), (2, 0)]).rank() == 1

    def test_json_roundtrip(self):
        cfg = worked_example()
        back = config_from_json_dict(cfg.to_json_dict())
        assert back == cfg

    def test_json_rejects_malformed(self):
        with pytest.raises(ValueError):
            config_from_json_dict({"dim": 2, "vectors": [[1]], "labels": ["a"]})
        with pytest.raises(ValueError):
            config_from_json_dict({"vectors": [[1, 2]]})


class TestGaleDual:
    def test_lr_dual_recovers_velocities(self):
        cfg, _ = lr_zonotope([1, 2, 3])
        dual = gale_dual(cfg)
        assert dual.dim == 1
        assert dual.vectors == ((1,), (2,), (3,))
        assert dual.labels == cfg.labels

    def test_corank_zero_dual_is_all_zeros(self):
        dual = gale_dual(VectorConfiguration.from_vectors([(1, 0), (0, 1)]))
        assert dual.dim == 0
        assert dual.n == 2

    @given(configurations(full_rank=True))
    @settings(max_examples=60)
    def test_dual_functionals_are_dependences(self, cfg):
        dual = gale_dual(cfg)
        assert dual.dim == cfg.n - cfg.rank()
        assert dual.n == cfg.n
        # every coordinate functional on the dual gives a dependence of cfg
        for r in range(dual.dim):
            coeffs = [w[r] for w in dual.vectors]
            for i in range(cfg.dim):
                assert (
                    sum(c * u[i] for c, u in zip(coeffs, cfg.vectors)) == 0
                )

    @given(configurations(full_rank=True))
    @settings(max_examples=60)
    def test_coloopless_gale_characterization(self, cfg):
        dual = gale_dual(cfg)
        zero = tuple([0] * dual.dim)
        no_zero_dual = all(w != zero for w in dual.vectors)
        assert is_coloopless(cfg) == no_zero_dual
        assert is_coloopless(cfg) == (not coloop_labels(cfg))


class TestPredicates:
    def test_worked_example_is_cosimple(self):
        assert is_cosimple(worked_example())
        assert is_coloopless(worked_example())

    def test_lr_configuration_values(self):
        cfg, _ = lr_zonotope([1, 2, 3, 4])
        assert is_coloopless(cfg)
        assert is_cosimple(cfg)

    def test_equal_coefficients_break_cosimplicity(self):
        cfg = VectorConfiguration.from_vectors([(1, 2), (2, 1), (3, -3)])
        assert is_coloopless(cfg)  # dependence (3, -3, 1)
        assert not is_cosimple(cfg)  # |3| repeats

    def test_independent_set_has_only_coloops(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert not is_coloopless(sq)
        assert not is_cosimple(sq)

    def test_rank_deficient_rejected(self):
        line = VectorConfiguration.from_vectors([(1, 0), (2, 0)], dim=2)
        with pytest.raises(RankDeficientError):
            is_coloopless(line)


class TestMinors:
    def test_deletion(self):
        cfg = worked_example()
        out = deletion(cfg, "u3")
        assert out.n == 3
        assert "u3" not in out.labels
        assert out.vector("u1") == (1, 2)
        with pytest.raises(UnknownLabelError):
            deletion(cfg, "u9")

    def test_diagonal_signs(self):
        cfg = worked_example()
        plus = diagonal(cfg, "u3", "u4", "+")
        minus = diagonal(cfg, "u3", "u4", "-")
        assert plus.n == 3 and minus.n == 3
        assert (-1, -1) in plus.vectors  # (1,-2) + (-2,1)
        assert (3, -3) in minus.vectors  # (1,-2) - (-2,1)

    def test_all_minors_count(self):
        cfg = worked_example()
        minors = list(all_minors(cfg))
        # n deletions plus two signs for each unordered pair
        assert len(minors) == 4 + 4 * 3

    def test_minor_existence_examples(self):
        assert cosimple_minor_exists(worked_example())
        lr1234, _ = lr_zonotope([1, 2, 3, 4])
        assert not cosimple_minor_exists(lr1234)
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert not cosimple_minor_exists(sq)

    def test_single_generator_corner(self):
        # a 1-element configuration has no minors at all, while its
        # 0-dimensional dual is a lone zero vector, vacuously lonely; the
        # minor <-> LVP dictionary starts at two generators
        seg = VectorConfiguration.from_vectors([(1,)])
        assert not cosimple_minor_exists(seg)
        assert has_lvp(gale_dual(seg))

    @given(configurations(full_rank=True))
    @settings(max_examples=40)
    def test_minor_existence_equals_dual_lvp(self, cfg):
        if cfg.n < 2:
            return
        assert cosimple_minor_exists(cfg) == has_lvp(gale_dual(cfg))


class TestDoubledAndLvp:
    def test_doubled_size_is_square(self):
        for vecs in ([(2, 3)], [(1, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)]):
            cfg = VectorConfiguration.from_vectors(vecs)
            assert doubled_config(cfg).n == len(vecs) ** 2

    def test_lvp_basics(self):
        assert has_lvp(VectorConfiguration.from_vectors([(2, 3)]))
        assert has_lvp(VectorConfiguration.from_vectors([(1, 0), (0, 1)]))
        assert not has_lvp(VectorConfiguration.from_vectors([(1, 0), (2, 0)]))

    def test_singleton_divergence_between_criteria(self):
        # doubled criterion is vacuously true on one vector; the symmetric
        # sum criterion always pairs u with 2u and says no
        single = VectorConfiguration.from_vectors([(2, 3)])
        assert has_lvp(single)
        assert not has_lvp_symmetric(single)

    def test_symmetric_criterion_admissibility(self):
        with pytest.raises(ValueError):
            has_lvp_symmetric(VectorConfiguration.from_vectors([(1, 0), (-1, 0)]))
        with pytest.raises(ValueError):
            has_lvp_symmetric(VectorConfiguration.from_vectors([(0, 0), (1, 0)]))

    @given(
        st.sets(
            st.tuples(
                st.integers(min_value=0, max_value=3),
                st.integers(min_value=-3, max_value=3),
            ).filter(lambda p: p > (0, 0)),
            min_size=2,
            max_size=5,
        )
    )
    @settings(max_examples=60)
    def test_criteria_agree_on_admissible_sets(self, vecs):
        # p > (0,0) keeps one representative per +- class, zero excluded
        cfg = VectorConfiguration.from_vectors(sorted(vecs), dim=2)
        assert has_lvp(cfg) == has_lvp_symmetric(cfg)

    def test_rectangle_sizes(self):
        assert rectangle_config(1, 1).n == 4
        assert rectangle_config(2, 2).n == 12
        assert rectangle_config(3, 5).n == 38

    def test_rectangle_primitivity_criterion(self):
        for a in range(1, 5):
            for b in range(1, 5):
                expected = (
                    math.gcd(2 * a - 1, 2 * b) == 1
                    or math.gcd(2 * a, 2 * b - 1) == 1
                )
                assert has_lvp(rectangle_config(a, b)) == expected, (a, b)

    def test_rectangle_3_5_fails_lvp(self):
        assert not has_lvp(rectangle_config(3, 5))


class TestLvpSearch:
    def test_rectangle_pool_found_whole(self):
        found = lvp_counterexample_search(rectangle_config(3, 5), 38)
        assert found is not None
        assert found.n == 38
        assert not has_lvp(found)

    def test_limit_too_small(self):
        assert lvp_counterexample_search(rectangle_config(3, 5), 1) is None

    def test_small_disk_has_none(self):
        assert lvp_counterexample_search(triangular_disk_config(3), 12) is None

    def test_disk_sizes(self):
        assert triangular_disk_config(3).n == 6
        assert triangular_disk_config(4).n == 9
        assert triangular_disk_config(7).n == 15


class TestReduceToLr:
    def test_already_lr(self):
        cfg, _ = lr_zonotope([1, 2, 3])
        steps, final = reduce_to_lr(cfg)
        assert steps == []
        assert final == cfg

    def test_worked_example_single_step(self):
        steps, final = reduce_to_lr(worked_example())
        assert len(steps) == 1
        assert final.n == 3
        assert is_coloopless(final)

    def test_rejects_coloops(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        with pytest.raises(NotColooplessError):
            reduce_to_lr(sq)

    @given(configurations(max_n=6, max_d=3, full_rank=True))
    @settings(max_examples=30)
    def test_random_coloopless_reduction(self, cfg):
        if not is_coloopless(cfg) or cfg.n <= cfg.dim + 1:
            return
        steps, final = reduce_to_lr(cfg)
        assert len(steps) == cfg.n - cfg.dim - 1
        assert final.n == cfg.dim + 1
        assert is_coloopless(final)


class TestWidths:
    def test_functional_width_examples(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert width_with_functional(sq, (1, 0)) == 1
        assert width_with_functional(sq, (2, -1)) == 3
        _, _, prism = almost_coloopless_zonotope(3)
        assert width_with_functional(prism, (1, 0, -1)) == 3

    def test_lattice_width_examples(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert lattice_width_upto(sq, Z2, 3) == Exactly(1)
        dense = LatticeDescription(2, 5, (1, 2))
        assert lattice_width_upto(sq, dense, 3) == Exactly(3)

    def test_bound_too_large(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        with pytest.raises(BoundTooLargeError):
            lattice_width_upto(sq, Z2, 710)

    def test_width3_diagonal_worked_example(self):
        out = width3_diagonal(worked_example(), [1, 4, 7, 8])
        assert set(out.vectors) == {(1, 2), (2, 1), (3, -3)}
        assert not is_cosimple(out)
        assert lattice_width_upto(out, Z2, 2) == GreaterThan(2)

    def test_width3_diagonal_demands_sorted_dependence(self):
        with pytest.raises(NotSortedError):
            width3_diagonal(worked_example(), [4, 1, 7, 8])
        with pytest.raises(NotSortedError):
            width3_diagonal(worked_example(), [1, 4, 7, -8])

    def test_width3_diagonal_on_lr(self):
        cfg, _ = lr_zonotope([1, 2, 3])
        out = width3_diagonal(cfg, [1, 2, 3])
        assert lattice_width_upto(out, Z2, 2) == GreaterThan(2)


class TestContainment:
    def test_z_in_z(self):
        cfg = worked_example()
        assert zonotope_contains(cfg, cfg)

    def test_dimension_mismatch(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        seg = VectorConfiguration.from_vectors([(1, 0, 0)])
        with pytest.raises(DimensionMismatchError):
            zonotope_contains(seg, sq)

    def test_negative_diagonal_needs_translation(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        inner = diagonal(sq, "u1", "u2", "-")
        assert not zonotope_contains(inner, sq)
        assert zonotope_contains(inner, sq, translation=(0, 1))

    def test_positive_diagonal_contained_as_is(self):
        sq = VectorConfiguration.from_vectors([(1, 0), (0, 1)])
        assert zonotope_contains(diagonal(sq, "u1", "u2", "+"), sq)

    @given(configurations(max_n=5, max_d=3, full_rank=True), st.data())
    @settings(max_examples=60)
    def test_translated_diagonals_always_contained(self, cfg, data):
        # diagonal subzonotopes sit inside the original with equal centers:
        # positive ones as-is, negative ones translated by the second vector
        if cfg.n < 2:
            return
        i = data.draw(st.integers(min_value=0, max_value=cfg.n - 2))
        j = data.draw(st.integers(min_value=i + 1, max_value=cfg.n - 1))
        sign = data.draw(st.sampled_from(["+", "-"]))
        li, lj = cfg.labels[i], cfg.labels[j]
        inner = diagonal(cfg, li, lj, sign)
        shift = cfg.vector(lj) if sign == "-" else None
        assert zonotope_contains(inner, cfg, translation=shift)


class TestBodiesAndMinima:
    def test_cusick_first_minima(self):
        for q in (5, 7, 11, 6, 9):
            body, lattice = cusick_parallelepiped(q)
            assert first_c_minimum(body, lattice) == Rational(q - 2, q), q

    def test_cusick_shapes(self):
        body5, lat5 = cusick_parallelepiped(5)
        assert body5.dim == 2 and lat5.q == 5 and lat5.w == (1, 2)
        body6, lat6 = cusick_parallelepiped(6)
        assert body6.dim == 3 and lat6.q == 6

    def test_almost_coloopless_minima(self):
        for d in (3, 5):
            body, lattice, _ = almost_coloopless_zonotope(d)
            assert first_c_minimum(body, lattice) == Rational(d - 1, d), d

    def test_almost_coloopless_structure(self):
        body, lattice, cfg = almost_coloopless_zonotope(3)
        assert len(body.pairs) == 4  # 2(C(3,2)+1) inequalities as slab pairs
        assert cfg.n == 4
        assert lattice.q == 3 and lattice.w == (1, 2, 1)
        assert not is_coloopless(cfg)
        assert coloop_labels(cfg) == [cfg.labels[-1]]

    def test_lr_zonotope_kappa(self):
        _, body = lr_zonotope([1, 2, 3])
        assert first_c_minimum(body, Z2) == Rational(1, 2)

    def test_first_minimum_dimension_check(self):
        body, _ = cusick_parallelepiped(5)
        with pytest.raises(ValueError):
            first_c_minimum(body, LatticeDescription(3, 1, (0, 0, 0)))

    def test_successive_minima_table(self):
        _, z123 = lr_zonotope([1, 2, 3])
        assert successive_minima_2d(z123) == (Rational(1, 3), Rational(2, 5))
        _, z124 = lr_zonotope([1, 2, 4])
        assert successive_minima_2d(z124) == (Rational(1, 3), Rational(1, 3))
        square, _ = cusick_parallelepiped(5)
        assert successive_minima_2d(square) == (Rational(1), Rational(1))

    def test_successive_minima_dimension_check(self):
        body, _, _ = almost_coloopless_zonotope(3)
        with pytest.raises(ValueError):
            successive_minima_2d(body)


class TestLatticePoints:
    def test_known_counts(self):
        assert lattice_point_count([1, 1]) == 3
        assert lattice_point_count([1, 2, 3]) == 10

    def test_lr_generators(self):
        cfg, _ = lr_zonotope([1, 1])
        assert cfg.dim == 1
        assert set(cfg.vectors) == {(1,), (-1,)}

    def test_volume_vector(self):
        cfg, _ = lr_zonotope([1, 2, 3])
        rows = [[v[i] for v in cfg.vectors] for i in range(2)]
        assert integer_kernel_basis(rows) == [[1, 2, 3]]

    @given(
        st.lists(
            st.integers(min_value=1, max_value=8), min_size=2, max_size=3
        ).filter(lambda v: math.gcd(*v) == 1)
    )
    @settings(max_examples=30)
    def test_formula_matches_enumeration(self, v):
        count = lattice_point_count(v)
        assert count == len(lattice_points_enumerated(v))
        assert count > sum(v)
