"""
Test schedules.

Every schedule is a dense block of ``(rho, r, i, k)`` pairs over the active
divisions, described by its shape ``(P, R_s, I, K_s)``:

* non-adaptive / linear: ``(P, R, I, K)``, every cross-product pair
* adaptive stage 1: ``(P, R, I1, 1)``, each reference group with each probe group
* adaptive stage 2: ``(P, 1, I2, K)``, the selected group of each active division
"""

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidParameterError
from design.plan import DesignPlan, PlanStage


@dataclass(frozen=True)
class Schedule:
    stage: PlanStage
    shape: tuple[int, int, int, int]
    active: tuple[int, ...]
    selected: tuple[int, ...] | None = None

    def __len__(self) -> int:
        _, slots, families, blocks = self.shape
        return len(self.active) * slots * families * blocks

    def reference_index(self, rho: int, slot: int) -> int:
        """Reference group tested in ``slot`` of division ``rho``."""
        if self.selected is not None:
            return self.selected[rho]
        return slot

    def pairs(self) -> Iterator[tuple[int, int, int, int]]:
        """Scheduled ``(rho, r, i, k)`` tuples in measurement order."""
        _, slots, families, blocks = self.shape
        for rho in self.active:
            for slot in range(slots):
                r = self.reference_index(rho, slot)
                for i in range(families):
                    for k in range(blocks):
                        yield rho, r, i, k

    def as_array(self) -> np.ndarray:
        """All scheduled pairs as an ``(len, 4)`` integer array, same order as :meth:`pairs`."""
        P, slots, families, blocks = self.shape
        if not len(self):
            return np.empty((0, 4), dtype=np.int64)
        grid = np.stack(
            np.meshgrid(np.array(self.active), np.arange(slots), np.arange(families), np.arange(blocks), indexing="ij"),
            axis=-1,
        ).reshape(-1, 4)
        if self.selected is not None:
            grid[:, 1] = np.asarray(self.selected)[grid[:, 0]]
        return grid


def build_schedule(plan: DesignPlan, variant: PlanStage | None = None) -> Schedule:
    """
    The tests a plan calls for.

    Stage 2 schedules only the divisions whose selected reference group is
    not ``-1``; a failed division contributes no tests.
    """
    variant = plan.stage if variant is None else PlanStage(variant)
    if variant is not plan.stage:
        raise InvalidParameterError(f"cannot build a {variant.value} schedule from a {plan.stage.value} plan")

    params = plan.params
    active = tuple(int(rho) for rho in plan.active_divisions)
    match variant:
        case PlanStage.NONADAPTIVE | PlanStage.LINEAR:
            return Schedule(variant, (plan.P, plan.R, plan.family_count, params.K), active)
        case PlanStage.STAGE1:
            return Schedule(variant, (plan.P, plan.R, plan.family_count, 1), active)
        case PlanStage.STAGE2:
            selected = tuple(int(r) for r in plan.selected)
            return Schedule(variant, (plan.P, 1, plan.family_count, params.K), active, selected)
