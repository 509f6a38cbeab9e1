"""
Decode results and their scoring against the truth.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from decoder.rules import ItemLabel, RefClass
from model_core.population import Population


class DivisionStatus(str, Enum):
    OK = "ok"
    NO_CRITICAL_GROUP = "no-critical-group"


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """
    Everything a decoder concluded.

    ``ref_class`` maps ``(rho, r)`` to a :class:`RefClass` for the Bernoulli
    decoders and to the estimated ``v`` (or ``None``) for the linear decoder.
    ``item_class`` holds :class:`ItemLabel` codes for items ``0..n-1``.
    """

    ref_class: dict[tuple[int, int], RefClass | int | None]
    item_class: np.ndarray
    division_status: tuple[DivisionStatus, ...]
    selected: tuple[int | None, ...]
    tests_used: int
    stage_counts: dict[str, int] = field(default_factory=dict)

    @property
    def failed_divisions(self) -> int:
        return sum(status is not DivisionStatus.OK for status in self.division_status)

    @property
    def undetermined(self) -> int:
        return int(np.sum(self.item_class == ItemLabel.UNDETERMINED))

    @property
    def declared_defectives(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.item_class == ItemLabel.DEFECTIVE).tolist())

    def to_record(self) -> dict[str, Any]:
        """Structured form: per-item labels, per-division status and counts."""
        return {
            "ref_class": {
                f"{rho},{r}": value.value if isinstance(value, RefClass) else value
                for (rho, r), value in sorted(self.ref_class.items())
            },
            "item_class": self.item_class.tolist(),
            "division_status": [status.value for status in self.division_status],
            "selected": list(self.selected),
            "tests_used": self.tests_used,
            "stage_counts": dict(self.stage_counts),
        }


@dataclass(frozen=True)
class Score:
    false_positives: int
    false_negatives: int
    undetermined: int
    failed_divisions: int

    @property
    def exact_recovery(self) -> bool:
        return self.false_positives == 0 and self.false_negatives == 0 and self.undetermined == 0 and self.failed_divisions == 0


def score_result(result: DecodeResult, population: Population) -> Score:
    """
    Compare a decode with the hidden defective set.

    Undetermined items count neither as false positives nor as false negatives.
    """
    truth = population.indicator
    labels = result.item_class
    return Score(
        false_positives=int(np.sum((labels == ItemLabel.DEFECTIVE) & ~truth)),
        false_negatives=int(np.sum((labels == ItemLabel.NON_DEFECTIVE) & truth)),
        undetermined=int(np.sum(labels == ItemLabel.UNDETERMINED)),
        failed_divisions=result.failed_divisions,
    )
