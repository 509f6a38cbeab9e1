from fractions import Fraction

import numpy as np
import pytest

from decoder.rules import (
    ItemLabel,
    RefClass,
    classify_item,
    classify_items,
    classify_reference_group,
    estimate_reference_v,
    select_reference_group,
)
from model_core.population import Instance
from probmath.thresholds import ThresholdTable, build_threshold_table, linear_v_range


@pytest.fixture
def exact_table(tiny_instance, bernoulli):
    return build_threshold_table(tiny_instance, bernoulli, 3, exact=True)


class TestReferenceClassification:
    """Band [15.5, 25] for n=6, d=3, l=1, u=3, groups of 3 and I=40."""

    @pytest.mark.parametrize(
        ("count", "expected"),
        [
            (0, RefClass.PROMISING),
            (15, RefClass.PROMISING),
            (16, RefClass.CRITICAL),
            (20, RefClass.CRITICAL),
            (25, RefClass.CRITICAL),
            (26, RefClass.MISLEADING),
            (40, RefClass.MISLEADING),
        ],
    )
    def test_band(self, exact_table, count, expected):
        assert classify_reference_group(count, 40, exact_table) is expected

    def test_float_table_agrees(self, tiny_instance, bernoulli):
        table = build_threshold_table(tiny_instance, bernoulli, 3)
        assert classify_reference_group(20, 40, table) is RefClass.CRITICAL
        assert classify_reference_group(15, 40, table) is RefClass.PROMISING
        assert classify_reference_group(26, 40, table) is RefClass.MISLEADING


class TestItemClassification:
    """Boundary 22 for the same instance."""

    @pytest.mark.parametrize(
        ("count", "expected"),
        [(0, ItemLabel.NON_DEFECTIVE), (21, ItemLabel.NON_DEFECTIVE), (22, ItemLabel.NON_DEFECTIVE), (23, ItemLabel.DEFECTIVE), (40, ItemLabel.DEFECTIVE)],
    )
    def test_boundary(self, exact_table, count, expected):
        assert classify_item(count, 40, exact_table) is expected

    def test_vectorised(self):
        labels = classify_items(np.array([0, 21, 22, 23]), 22.0)
        assert labels.dtype == np.int8
        assert labels.tolist() == [0, 0, 0, 1]

    def test_per_item_boundaries(self):
        assert classify_items(np.array([5, 5]), np.array([4.5, 5.5])).tolist() == [1, 0]


class TestEstimateReferenceV:
    def test_expected_counts_estimate_their_v(self, linear):
        instance = Instance(n=200, d=20, l=2, u=7)
        table = build_threshold_table(instance, linear, 20, linear_v_range(instance))
        I = 1000
        for v in table.v_range:
            assert estimate_reference_v(round(I * float(table.q[v])), I, table) == v

    def test_no_band_matches(self, linear):
        instance = Instance(n=200, d=20, l=2, u=7)
        table = build_threshold_table(instance, linear, 20, linear_v_range(instance))
        assert estimate_reference_v(0, 1000, table) is None
        assert estimate_reference_v(1000, 1000, table) is None

    def test_shared_edge_goes_to_smaller_v(self):
        q = {0: Fraction(1, 5), 1: Fraction(2, 5), 2: Fraction(3, 5), 3: Fraction(4, 5)}
        phi = {(1, 0): Fraction(1, 5), (1, 1): Fraction(1, 2), (2, 0): Fraction(1, 5), (2, 1): Fraction(1, 2)}
        table = ThresholdTable.from_values(q, phi, (1, 2))
        assert table.upper_edge(1, 10) == table.lower_edge(2, 10) == 5
        assert estimate_reference_v(5, 10, table) == 1
        assert estimate_reference_v(6, 10, table) == 2
        assert estimate_reference_v(4, 10, table) == 1


class TestSelectReferenceGroup:
    def test_nearest_to_centre(self):
        assert select_reference_group([10, 12, 11], 22, [0.5, 0.5, 0.5], [0, 1, 2]) == 2

    def test_only_candidates_considered(self):
        assert select_reference_group([10, 12, 11], 22, [0.5, 0.5, 0.5], [0, 1]) in (0, 1)
        assert select_reference_group([10, 12, 11], 22, [0.5, 0.5, 0.5], [1]) == 1

    def test_ties_go_to_lowest_index(self):
        assert select_reference_group([10, 10], 20, [0.5, 0.5], [1, 0]) == 0

    def test_no_candidates(self):
        assert select_reference_group([10, 12], 22, [0.5, 0.5], []) is None
