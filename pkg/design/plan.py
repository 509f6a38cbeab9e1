"""
Design plans: who is tested with whom.

A plan is built once per trial from the design stream and never modified. The
adaptive algorithm produces two plans; the second shares the divisions and
reference groups of the first and adds fresh indicator families for the
selected reference group of each division.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
from loguru import logger

from core.exceptions import DesignInvariantError, InvalidParameterError
from design.partitions import (
    balanced_sizes,
    build_divisions,
    division_index,
    sample_indicator_families,
    sample_probe_groups,
    sample_reference_groups,
)
from model_core.population import Instance
from probmath.params import Algorithm, DesignParams


class PlanStage(str, Enum):
    NONADAPTIVE = "nonadaptive"
    LINEAR = "linear"
    STAGE1 = "stage1"
    STAGE2 = "stage2"


@dataclass(frozen=True, eq=False)
class DesignPlan:
    """
    Divisions, reference groups and indicator families of one design.

    Attributes:
        divisions: ``P`` sorted index arrays partitioning the universe.
        reference_groups: ``(P, R, ref_size)`` array; group ``(rho, r)`` avoids division ``rho``.
        families: ``(I, n)`` block labels, absent in adaptive stage 1.
        probe_picks: probe block per family (non-adaptive and linear plans).
        probe_groups: ``(I1, probe_size)`` uniform groups of adaptive stage 1.
        selected: adaptive stage 2 only; reference group per division, ``-1`` when the division failed.
    """

    params: DesignParams
    stage: PlanStage
    divisions: tuple[np.ndarray, ...]
    reference_groups: np.ndarray
    families: np.ndarray | None = None
    probe_picks: np.ndarray | None = None
    probe_groups: np.ndarray | None = None
    selected: np.ndarray | None = None
    seed: int | None = None

    @property
    def instance(self) -> Instance:
        return self.params.instance

    @property
    def n(self) -> int:
        return self.params.instance.n

    @property
    def P(self) -> int:
        return len(self.divisions)

    @property
    def R(self) -> int:
        return self.reference_groups.shape[1]

    @property
    def family_count(self) -> int:
        """Number of indicator families (or probe groups in stage 1)."""
        if self.stage is PlanStage.STAGE1:
            return self.probe_groups.shape[0]
        return self.families.shape[0]

    @cached_property
    def block_sizes(self) -> np.ndarray:
        return balanced_sizes(self.n, self.params.K)

    @cached_property
    def division_of(self) -> np.ndarray:
        return division_index(self.n, self.divisions)

    @property
    def probe_sizes(self) -> np.ndarray:
        """Size of the probe group used for reference classification in each family."""
        if self.stage is PlanStage.STAGE1:
            return np.full(self.probe_groups.shape[0], self.probe_groups.shape[1], dtype=np.int64)
        if self.probe_picks is None:
            raise InvalidParameterError(f"{self.stage.value} plan has no probe groups")
        return self.block_sizes[self.probe_picks]

    @property
    def active_divisions(self) -> np.ndarray:
        if self.stage is PlanStage.STAGE2:
            return np.flatnonzero(self.selected >= 0)
        return np.arange(self.P)

    def check_invariants(self) -> None:
        """
        Assert the structural guarantees of the plan.

        Raises:
            DesignInvariantError: on any violation.
        """
        n = self.n
        sizes = [len(members) for members in self.divisions]
        if sum(sizes) != n or max(sizes) - min(sizes) > 1:
            raise DesignInvariantError(f"divisions are not a balanced partition: sizes {sizes}")
        if np.any(self.division_of < 0):
            raise DesignInvariantError("divisions do not cover the universe")
        for rho in range(self.P):
            if np.any(self.division_of[self.reference_groups[rho]] == rho):
                raise DesignInvariantError(f"a reference group of division {rho} overlaps the division")
        if self.families is not None:
            K = self.params.K
            offsets = (np.arange(self.families.shape[0]) * K)[:, None]
            counts = np.bincount((self.families + offsets).ravel(), minlength=self.families.shape[0] * K)
            bad = np.flatnonzero(np.any(counts.reshape(-1, K) != self.block_sizes, axis=1))
            if len(bad):
                raise DesignInvariantError(f"family {bad[0]} is not a balanced partition into {K} blocks")
        if self.stage is PlanStage.STAGE2:
            if self.selected is None or len(self.selected) != self.P:
                raise DesignInvariantError("stage 2 plan needs one selected reference group per division")
            if np.any(self.selected >= self.R):
                raise DesignInvariantError("selected reference group index out of range")


def build_plan(params: DesignParams, rng: np.random.Generator, *, seed: int | None = None) -> DesignPlan:
    """
    Build the first (or only) plan of the algorithm.

    Non-adaptive and linear plans hold the full cross-product design. For the
    adaptive algorithm this is stage 1: divisions, reference groups and
    ``I1`` uniform probe groups; stage 2 comes from :func:`build_stage2_plan`.
    """
    n = params.instance.n
    divisions = build_divisions(n, params, rng)
    reference_groups = sample_reference_groups(divisions, params, rng)

    if params.algorithm is Algorithm.ADAPTIVE:
        probe_groups = sample_probe_groups(n, params.probe_size, params.I1, rng)
        plan = DesignPlan(
            params=params,
            stage=PlanStage.STAGE1,
            divisions=divisions,
            reference_groups=reference_groups,
            probe_groups=probe_groups,
            seed=seed,
        )
    else:
        families, probe_picks = sample_indicator_families(n, params, params.I, rng)
        stage = PlanStage.LINEAR if params.algorithm is Algorithm.LINEAR else PlanStage.NONADAPTIVE
        plan = DesignPlan(
            params=params,
            stage=stage,
            divisions=divisions,
            reference_groups=reference_groups,
            families=families,
            probe_picks=probe_picks,
            seed=seed,
        )
    plan.check_invariants()
    logger.debug(
        f"{plan.stage.value} plan: P={plan.P} R={plan.R} families={plan.family_count} ref_size={params.ref_size}"
    )
    return plan


def build_stage2_plan(stage1: DesignPlan, selected: np.ndarray, rng: np.random.Generator) -> DesignPlan:
    """
    Second adaptive stage: ``I2`` fresh families tested against one reference group per division.

    ``selected[rho]`` is the chosen reference group of division ``rho`` or
    ``-1`` when stage 1 found no critical group there.
    """
    if stage1.stage is not PlanStage.STAGE1:
        raise InvalidParameterError(f"stage 2 builds on a stage 1 plan, got {stage1.stage.value}")
    selected = np.asarray(selected, dtype=np.int64)
    families, _ = sample_indicator_families(stage1.n, stage1.params, stage1.params.I2, rng)
    plan = DesignPlan(
        params=stage1.params,
        stage=PlanStage.STAGE2,
        divisions=stage1.divisions,
        reference_groups=stage1.reference_groups,
        families=families,
        selected=selected,
        seed=stage1.seed,
    )
    plan.check_invariants()
    failed = int(np.sum(selected < 0))
    if failed:
        logger.warning(f"Stage 2: {failed} of {plan.P} divisions have no critical reference group")
    return plan
