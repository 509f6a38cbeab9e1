"""
Match-and-quantize rules.

Counts are integers and band edges are real numbers; the comparisons are made
directly, with inclusive bands on both sides.
"""

from collections.abc import Iterable, Sequence
from enum import Enum, IntEnum

import numpy as np

from probmath.thresholds import ThresholdTable


class RefClass(str, Enum):
    PROMISING = "promising"
    CRITICAL = "critical"
    MISLEADING = "misleading"


class ItemLabel(IntEnum):
    UNDETERMINED = -1
    NON_DEFECTIVE = 0
    DEFECTIVE = 1


def classify_reference_group(count: int, I: int, table: ThresholdTable, v: int | None = None) -> RefClass:
    """Critical iff ``I q_v (1 - eta_below) <= count <= I q_v (1 + eta_above)``; below is promising, above misleading."""
    v = table.v_range[0] if v is None else v
    if count < table.lower_edge(v, I):
        return RefClass.PROMISING
    if count > table.upper_edge(v, I):
        return RefClass.MISLEADING
    return RefClass.CRITICAL


def classify_item(count: int, I: int, table: ThresholdTable, v: int | None = None) -> ItemLabel:
    """Non-defective iff ``count <= I phi_{v,0} (1 + Delta_v)``."""
    v = table.v_range[0] if v is None else v
    return ItemLabel.NON_DEFECTIVE if count <= table.item_boundary(v, I) else ItemLabel.DEFECTIVE


def classify_items(counts: np.ndarray, boundaries: np.ndarray | float) -> np.ndarray:
    """Vectorised :func:`classify_item` against precomputed boundaries; returns ``int8`` labels."""
    labels = np.where(np.asarray(counts) <= boundaries, int(ItemLabel.NON_DEFECTIVE), int(ItemLabel.DEFECTIVE))
    return labels.astype(np.int8)


def estimate_reference_v(
    count: int,
    I: int,
    table: ThresholdTable,
    v_range: Iterable[int] | None = None,
) -> int | None:
    """
    The ``v`` whose band holds ``count``.

    When several bands match, the one whose centre ``q_v`` is nearest to
    ``count / I`` wins, ties going to the smaller ``v``. ``None`` when no band
    matches.
    """
    candidates = [
        v
        for v in (table.v_range if v_range is None else v_range)
        if table.lower_edge(v, I) <= count <= table.upper_edge(v, I)
    ]
    if not candidates:
        return None
    return min(candidates, key=lambda v: (abs(count / I - table.q[v]), v))


def select_reference_group(counts: Sequence[int], I: int, centres: Sequence[float], candidates: Iterable[int]) -> int | None:
    """
    Pick one reference group among ``candidates``.

    The chosen group has its positive fraction ``counts[r] / I`` closest to its
    expected fraction ``centres[r]``; ties go to the lowest ``r``.
    """
    ranked = sorted(candidates, key=lambda r: (abs(counts[r] / I - centres[r]), r))
    return ranked[0] if ranked else None
