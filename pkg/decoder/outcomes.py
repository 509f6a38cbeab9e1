"""
Outcome tables and the measurement of a schedule against a population.

The pool of pair ``(rho, r, i, k)`` is the union of reference group
``(rho, r)`` and indicator block ``(i, k)``; its defective count is
``|R & D| + |B & D| - |R & B & D|``. Counts are computed one division at a
time and handed to the channel in C order, one uniform draw per test.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger

from design.plan import DesignPlan, PlanStage
from design.schedule import Schedule
from model_core.channel import GapChannel
from model_core.outcomes import sample_outcomes
from model_core.population import Population, TestPool


@dataclass(frozen=True, eq=False)
class OutcomeTable:
    """Binary outcome of every scheduled test, stored densely in the schedule's shape."""

    schedule: Schedule
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != self.schedule.shape:
            raise ValueError(f"outcome array shape {self.values.shape} does not match schedule {self.schedule.shape}")
        values = np.ascontiguousarray(self.values, dtype=np.uint8)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.schedule)

    @property
    def tests_used(self) -> int:
        return len(self.schedule)

    def _slot(self, pair: tuple[int, int, int, int]) -> tuple[int, int, int, int] | None:
        rho, r, i, k = pair
        P, slots, families, blocks = self.schedule.shape
        if rho not in self.schedule.active or not (0 <= i < families and 0 <= k < blocks):
            return None
        if self.schedule.selected is not None:
            return (rho, 0, i, k) if r == self.schedule.selected[rho] else None
        return (rho, r, i, k) if 0 <= r < slots else None

    def __contains__(self, pair: tuple[int, int, int, int]) -> bool:
        return self._slot(pair) is not None

    def __getitem__(self, pair: tuple[int, int, int, int]) -> int:
        slot = self._slot(pair)
        if slot is None:
            raise KeyError(pair)
        return int(self.values[slot])

    def division(self, rho: int) -> np.ndarray:
        """Outcomes of division ``rho`` as ``(R_s, I, K_s)``."""
        return self.values[rho]


def pool_for(plan: DesignPlan, pair: tuple[int, int, int, int]) -> TestPool:
    """The pool measured by one scheduled pair."""
    rho, r, i, k = pair
    reference = plan.reference_groups[rho, r]
    if plan.stage is PlanStage.STAGE1:
        return TestPool.union(reference.tolist(), plan.probe_groups[i].tolist())
    return TestPool.union(reference.tolist(), np.flatnonzero(plan.families[i] == k).tolist())


def division_counts(plan: DesignPlan, schedule: Schedule, population: Population, rho: int) -> np.ndarray:
    """Pool-defective counts of every scheduled test of division ``rho``, shape ``(R_s, I, K_s)``."""
    x = population.indicator
    defectives = population.defective_array
    _, slots, families, blocks = schedule.shape
    references = [schedule.reference_index(rho, slot) for slot in range(slots)]

    if plan.stage is PlanStage.STAGE1:
        membership = np.zeros((families, plan.n), dtype=bool)
        membership[np.arange(families)[:, None], plan.probe_groups] = True
        block_defectives = membership[:, defectives].sum(axis=1).reshape(families, 1)
    else:
        membership = None
        labels = plan.families[:, defectives].astype(np.int64)
        offsets = (np.arange(families) * blocks)[:, None]
        block_defectives = np.bincount((labels + offsets).ravel(), minlength=families * blocks).reshape(families, blocks)

    counts = np.empty((slots, families, blocks), dtype=np.int64)
    rows = np.arange(families)
    for slot, r in enumerate(references):
        group = plan.reference_groups[rho, r]
        shared = group[x[group]]
        overlap = np.zeros((families, blocks), dtype=np.int64)
        if membership is not None:
            overlap[:, 0] = membership[:, shared].sum(axis=1)
        else:
            for j in shared:
                overlap[rows, plan.families[:, j]] += 1
        counts[slot] = len(shared) + block_defectives - overlap
    return counts


def measure_schedule(
    plan: DesignPlan,
    schedule: Schedule,
    population: Population,
    channel: GapChannel,
    rng: np.random.Generator,
) -> OutcomeTable:
    """Run every scheduled test once, consuming the outcome stream division by division."""
    values = np.zeros(schedule.shape, dtype=np.uint8)
    for rho in schedule.active:
        counts = division_counts(plan, schedule, population, rho)
        values[rho] = sample_outcomes(counts, channel, population.l, population.u, rng)
    table = OutcomeTable(schedule=schedule, values=values)
    logger.debug(f"Measured {table.tests_used} {schedule.stage.value} tests, {int(values.sum())} positive")
    return table
