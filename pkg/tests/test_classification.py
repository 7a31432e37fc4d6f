"""Catalog enumerations, closed-form counts, and the brute-force oracle."""

from __future__ import annotations

import itertools

import pytest

import cellman as cm
from cellman.classify import (
    CatalogItem,
    brute_force_enumerate,
    build_family,
    count_excess1,
    count_neighbourly_reducible_excess2,
    count_neighbourly_reducible_excess2_printed,
    count_reducible_excess2,
    enumerate_excess1,
    enumerate_reducible_excess2,
)

EXCESS1_COUNTS = {1: 1, 2: 2, 3: 4, 4: 6, 5: 9, 6: 12, 7: 16, 8: 20, 9: 25, 10: 30}
REDUCIBLE_EXCESS2_COUNTS = {2: 1, 3: 2, 4: 5, 5: 10, 6: 17, 7: 27, 8: 41}
NEIGHBOURLY_COUNTS = {5: 1, 6: 2, 7: 5, 8: 10, 9: 17, 10: 27}


class TestFamilies:
    def test_join2(self):
        L = build_family("join2", (0, 1))
        assert (L.dim, L.excess) == (2, 1)
        assert cm.is_isomorphic(L, cm.join(cm.standard_sphere(0), cm.standard_sphere(1)))

    def test_join_tensor(self):
        L = build_family("join_tensor", (0, 0, -1))
        assert (L.dim, L.excess) == (2, 1)
        assert L.f_vector == (5, 8, 5)

    def test_join3(self):
        L = build_family("join3", (0, 0, 0))
        assert (L.dim, L.excess) == (2, 2)
        assert L.f_vector == (6, 12, 8)

    def test_join_tensor_join(self):
        L = build_family("join_tensor_join", (0, 0, -1, 0))
        assert (L.dim, L.excess) == (3, 2)
        assert L.n == 7

    def test_unknown_family(self):
        with pytest.raises(cm.InvalidParameter):
            build_family("pyramid_stack", (1, 2))

    def test_describe(self):
        item = CatalogItem("join2", (0, 1), build_family("join2", (0, 1)))
        assert item.describe() == "join2(0, 1)"


class TestExcess1Catalog:
    @pytest.mark.parametrize("d", sorted(EXCESS1_COUNTS))
    def test_counts_match_closed_form(self, d):
        assert count_excess1(d) == EXCESS1_COUNTS[d]

    @pytest.mark.parametrize("d", range(1, 7))
    def test_enumeration_matches_count(self, d):
        items = enumerate_excess1(d)
        assert len(items) == count_excess1(d)

    @pytest.mark.parametrize("d", range(1, 5))
    def test_items_have_right_shape(self, d):
        for item in enumerate_excess1(d):
            L = item.lattice
            assert (L.dim, L.excess) == (d, 1), item.describe()
            assert cm.validate(L).verdict, item.describe()

    def test_sorted_and_parameters_canonical(self):
        items = enumerate_excess1(5)
        keys = [(it.family, it.params) for it in items]
        assert keys == sorted(keys)
        for it in items:
            if it.family == "join2":
                assert it.params[0] <= it.params[1]
            else:
                assert it.params[0] <= it.params[1]

    @pytest.mark.parametrize("d", range(1, 5))
    def test_pairwise_nonisomorphic(self, d):
        items = enumerate_excess1(d)
        for a, b in itertools.combinations(items, 2):
            assert cm.is_isomorphic(a.lattice, b.lattice) is None, (
                a.describe(),
                b.describe(),
            )

    def test_dimension_one(self):
        (item,) = enumerate_excess1(1)
        assert cm.is_isomorphic(item.lattice, cm.cycle(4))

    def test_negative_dimension_rejected(self):
        with pytest.raises(cm.InvalidParameter):
            enumerate_excess1(-1)


class TestReducibleExcess2Catalog:
    @pytest.mark.parametrize("d", sorted(REDUCIBLE_EXCESS2_COUNTS))
    def test_counts_match_closed_form(self, d):
        assert count_reducible_excess2(d) == REDUCIBLE_EXCESS2_COUNTS[d]

    @pytest.mark.parametrize("d", range(2, 7))
    def test_enumeration_matches_count(self, d):
        assert len(enumerate_reducible_excess2(d)) == count_reducible_excess2(d)

    @pytest.mark.parametrize("d", range(2, 5))
    def test_items_have_right_shape(self, d):
        for item in enumerate_reducible_excess2(d):
            L = item.lattice
            assert (L.dim, L.excess) == (d, 2), item.describe()
            assert cm.is_reducible(L), item.describe()
            assert cm.validate(L).verdict, item.describe()

    @pytest.mark.parametrize("d", range(2, 5))
    def test_pairwise_nonisomorphic(self, d):
        items = enumerate_reducible_excess2(d)
        for a, b in itertools.combinations(items, 2):
            assert cm.is_isomorphic(a.lattice, b.lattice) is None, (
                a.describe(),
                b.describe(),
            )

    def test_dimension_two_is_only_octahedron(self, octahedron):
        items = enumerate_reducible_excess2(2)
        assert len(items) == 1
        assert cm.is_isomorphic(items[0].lattice, octahedron)


class TestNeighbourlyFilter:
    @pytest.mark.parametrize("d", (5, 6))
    def test_filter_agrees_with_predicate(self, d):
        full = enumerate_reducible_excess2(d)
        filtered = enumerate_reducible_excess2(d, neighbourly=True)
        by_predicate = [it.describe() for it in full if cm.is_neighbourly(it.lattice)]
        assert [it.describe() for it in filtered] == by_predicate

    @pytest.mark.parametrize("d", sorted(NEIGHBOURLY_COUNTS))
    def test_counts_match_closed_form(self, d):
        assert count_neighbourly_reducible_excess2(d) == NEIGHBOURLY_COUNTS[d]

    @pytest.mark.parametrize("d", (5, 6, 7))
    def test_enumeration_matches_count(self, d):
        items = enumerate_reducible_excess2(d, neighbourly=True)
        assert len(items) == count_neighbourly_reducible_excess2(d)

    def test_printed_variant_diverges_at_ten(self):
        assert count_neighbourly_reducible_excess2_printed(10) == 17
        assert count_neighbourly_reducible_excess2(10) == 27
        assert count_neighbourly_reducible_excess2_printed(10) != count_neighbourly_reducible_excess2(10)


class TestBruteForce:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_dimension_one_is_the_cycle(self, n):
        result = brute_force_enumerate(1, n)
        assert len(result) == 1
        assert cm.is_isomorphic(result[0], cm.cycle(n))

    def test_dimension_two_four_vertices(self):
        result = brute_force_enumerate(2, 4)
        assert len(result) == 1
        assert cm.is_isomorphic(result[0], cm.standard_sphere(2))

    def test_dimension_two_five_vertices(self, bipyramid, square_tensor_point):
        result = brute_force_enumerate(2, 5)
        assert len(result) == 2
        expected = [bipyramid, square_tensor_point]
        for L in result:
            assert any(cm.is_isomorphic(L, E) for E in expected), L.f_vector
        for E in expected:
            assert any(cm.is_isomorphic(L, E) for L in result), E.f_vector

    def test_results_validate(self):
        for L in brute_force_enumerate(1, 5) + brute_force_enumerate(2, 4):
            assert cm.validate(L).verdict
