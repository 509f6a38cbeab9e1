"""
End-to-end decoders for the three algorithms.

Each decoder first classifies every reference group from its probe tests,
selects one usable group per division (nearest to its expected fraction,
ties to the lowest index) and then labels the division's items from the tests
pairing that group with the block holding each item.
"""

from collections.abc import Callable, Mapping
from dataclasses import dataclass

import numpy as np
from loguru import logger

from core.exceptions import InvalidParameterError
from decoder.outcomes import OutcomeTable, measure_schedule
from decoder.results import DecodeResult, DivisionStatus
from decoder.rules import (
    ItemLabel,
    RefClass,
    classify_items,
    classify_reference_group,
    estimate_reference_v,
    select_reference_group,
)
from design.partitions import balanced_sizes
from design.plan import DesignPlan, PlanStage, build_plan, build_stage2_plan
from design.schedule import build_schedule
from model_core.channel import GapChannel
from model_core.population import Population
from probmath.params import Algorithm, DesignParams
from probmath.thresholds import ThresholdTable, linear_v_range, tables_for_sizes

TableSet = Mapping[int, ThresholdTable]

# Items decoded per batch; bounds the (families x items) working arrays
ITEM_BATCH = 256


def design_tables(params: DesignParams, channel: GapChannel) -> dict[PlanStage, dict[int, ThresholdTable]]:
    """
    Threshold tables for every group size a design with ``params`` can use, keyed by stage.

    Raises:
        DegenerateInstanceError: if a required expected fraction is zero.
    """
    instance = params.instance
    block_sizes = balanced_sizes(instance.n, params.K)
    match params.algorithm:
        case Algorithm.NONADAPTIVE:
            return {PlanStage.NONADAPTIVE: tables_for_sizes(instance, channel, block_sizes)}
        case Algorithm.LINEAR:
            return {PlanStage.LINEAR: tables_for_sizes(instance, channel, block_sizes, linear_v_range(instance))}
        case Algorithm.ADAPTIVE:
            return {
                PlanStage.STAGE1: tables_for_sizes(instance, channel, [params.probe_size]),
                PlanStage.STAGE2: tables_for_sizes(instance, channel, block_sizes),
            }


def blended_table(sizes: np.ndarray, tables: TableSet) -> ThresholdTable:
    """One table for counts summed over tests whose groups have the given sizes."""
    unique, counts = np.unique(np.asarray(sizes), return_counts=True)
    return ThresholdTable.blend([tables[int(size)] for size in unique], counts.tolist())


def probe_counts(plan: DesignPlan, outcomes: OutcomeTable) -> np.ndarray:
    """Positive probe tests per reference group, shape ``(P, R)``."""
    if plan.stage is PlanStage.STAGE1:
        return outcomes.values[:, :, :, 0].sum(axis=-1, dtype=np.int64)
    families = np.arange(plan.family_count)
    return outcomes.values[:, :, families, plan.probe_picks].sum(axis=-1, dtype=np.int64)


@dataclass(frozen=True)
class ReferenceDecision:
    ref_class: dict[tuple[int, int], RefClass | int | None]
    selected: tuple[int | None, ...]
    v_hat: tuple[int | None, ...]
    counts: np.ndarray

    @property
    def selected_array(self) -> np.ndarray:
        return np.array([-1 if r is None else r for r in self.selected], dtype=np.int64)

    @property
    def division_status(self) -> tuple[DivisionStatus, ...]:
        return tuple(DivisionStatus.NO_CRITICAL_GROUP if r is None else DivisionStatus.OK for r in self.selected)


def classify_references(plan: DesignPlan, outcomes: OutcomeTable, tables: TableSet) -> ReferenceDecision:
    """
    Bernoulli reference classification and per-division selection.

    With ``l = 0`` every (empty) reference group is critical.
    """
    l = plan.instance.l
    I = plan.family_count
    table = blended_table(plan.probe_sizes, tables)
    counts = probe_counts(plan, outcomes)
    centres = [float(table.q[l])] * plan.R

    ref_class: dict[tuple[int, int], RefClass] = {}
    selected: list[int | None] = []
    for rho in range(plan.P):
        critical = []
        for r in range(plan.R):
            label = RefClass.CRITICAL if l == 0 else classify_reference_group(int(counts[rho, r]), I, table, l)
            ref_class[(rho, r)] = label
            if label is RefClass.CRITICAL:
                critical.append(r)
        selected.append(select_reference_group(counts[rho], I, centres, critical))
    return ReferenceDecision(ref_class, tuple(selected), tuple(l if r is not None else None for r in selected), counts)


def estimate_references(plan: DesignPlan, outcomes: OutcomeTable, tables: TableSet) -> ReferenceDecision:
    """Linear-channel estimation of each group's defective count; only usable estimates are selectable."""
    I = plan.family_count
    table = blended_table(plan.probe_sizes, tables)
    counts = probe_counts(plan, outcomes)

    ref_class: dict[tuple[int, int], int | None] = {}
    selected: list[int | None] = []
    v_hat: list[int | None] = []
    for rho in range(plan.P):
        estimates = [estimate_reference_v(int(counts[rho, r]), I, table) for r in range(plan.R)]
        for r, v in enumerate(estimates):
            ref_class[(rho, r)] = v
        usable = [r for r, v in enumerate(estimates) if v is not None and table.usable(v)]
        centres = [float(table.q[v]) if v is not None else 0.0 for v in estimates]
        chosen = select_reference_group(counts[rho], I, centres, usable)
        selected.append(chosen)
        v_hat.append(None if chosen is None else estimates[chosen])
    return ReferenceDecision(ref_class, tuple(selected), tuple(v_hat), counts)


def decode_items(
    plan: DesignPlan,
    outcomes: np.ndarray,
    items: np.ndarray,
    tables: TableSet,
    v: int,
) -> np.ndarray:
    """
    Label ``items`` from the outcomes of one reference group against every family.

    Args:
        outcomes: ``(I, K)`` outcomes of the chosen reference group.
        items: item indices, all in the division the group serves.
        tables: per-block-size tables; each item's boundary sums the per-test
            boundary of the block size it met in each family.
        v: defective count assumed for the reference group.
    """
    I = plan.family_count
    rows = np.arange(I)[:, None]
    midpoints = {size: float(table.item_midpoint(v)) for size, table in tables.items()}
    labels = np.empty(len(items), dtype=np.int8)
    for start in range(0, len(items), ITEM_BATCH):
        batch = items[start : start + ITEM_BATCH]
        blocks = plan.families[:, batch].astype(np.int64)
        counts = outcomes[rows, blocks].sum(axis=0, dtype=np.int64)
        sizes = plan.block_sizes[blocks]
        boundaries = np.zeros(len(batch))
        for size, midpoint in midpoints.items():
            boundaries += (sizes == size).sum(axis=0) * midpoint
        labels[start : start + len(batch)] = classify_items(counts, boundaries)
    return labels


def _decode_divisions(
    plan: DesignPlan,
    division_outcomes: Callable[[int, int], np.ndarray],
    decision: ReferenceDecision,
    tables: TableSet,
) -> np.ndarray:
    item_class = np.full(plan.n, int(ItemLabel.UNDETERMINED), dtype=np.int8)
    for rho, members in enumerate(plan.divisions):
        r = decision.selected[rho]
        if r is None:
            logger.warning(f"Division {rho}: no usable reference group, {len(members)} items undetermined")
            continue
        item_class[members] = decode_items(plan, division_outcomes(rho, r), members, tables, decision.v_hat[rho])
    return item_class


def decode_nonadaptive(plan: DesignPlan, outcomes: OutcomeTable, tables: TableSet) -> DecodeResult:
    """Reference classification from the probe blocks, then item decoding from the same cross-product outcomes."""
    if plan.stage is not PlanStage.NONADAPTIVE:
        raise InvalidParameterError(f"non-adaptive decoder got a {plan.stage.value} plan")
    decision = classify_references(plan, outcomes, tables)
    item_class = _decode_divisions(plan, lambda rho, r: outcomes.values[rho, r], decision, tables)
    return DecodeResult(
        ref_class=decision.ref_class,
        item_class=item_class,
        division_status=decision.division_status,
        selected=decision.selected,
        tests_used=outcomes.tests_used,
        stage_counts={"nonadaptive": outcomes.tests_used},
    )


def decode_adaptive(
    stage1_plan: DesignPlan,
    stage1_outcomes: OutcomeTable,
    stage2_plan: DesignPlan,
    stage2_outcomes: OutcomeTable,
    tables: Mapping[PlanStage, TableSet],
) -> DecodeResult:
    """
    Reference classification from stage 1, item decoding from stage 2.

    Raises:
        InvalidParameterError: if the stage 2 plan was not built from this stage 1 classification.
    """
    decision = classify_references(stage1_plan, stage1_outcomes, tables[PlanStage.STAGE1])
    if not np.array_equal(decision.selected_array, stage2_plan.selected):
        raise InvalidParameterError("stage 2 plan does not match the stage 1 selection")
    item_class = _decode_divisions(
        stage2_plan, lambda rho, r: stage2_outcomes.values[rho, 0], decision, tables[PlanStage.STAGE2]
    )
    return DecodeResult(
        ref_class=decision.ref_class,
        item_class=item_class,
        division_status=decision.division_status,
        selected=decision.selected,
        tests_used=stage1_outcomes.tests_used + stage2_outcomes.tests_used,
        stage_counts={"stage1": stage1_outcomes.tests_used, "stage2": stage2_outcomes.tests_used},
    )


def decode_linear(plan: DesignPlan, outcomes: OutcomeTable, tables: TableSet) -> DecodeResult:
    """Estimate each reference group's count, then decode items against the nearest usable group."""
    if plan.stage is not PlanStage.LINEAR:
        raise InvalidParameterError(f"linear decoder got a {plan.stage.value} plan")
    decision = estimate_references(plan, outcomes, tables)
    item_class = _decode_divisions(plan, lambda rho, r: outcomes.values[rho, r], decision, tables)
    return DecodeResult(
        ref_class=decision.ref_class,
        item_class=item_class,
        division_status=decision.division_status,
        selected=decision.selected,
        tests_used=outcomes.tests_used,
        stage_counts={"linear": outcomes.tests_used},
    )


@dataclass(frozen=True, eq=False)
class PipelineRun:
    plans: tuple[DesignPlan, ...]
    outcomes: tuple[OutcomeTable, ...]
    result: DecodeResult


def run_pipeline(
    population: Population,
    channel: GapChannel,
    params: DesignParams,
    design_rng: np.random.Generator,
    outcome_rng: np.random.Generator,
    *,
    tables: Mapping[PlanStage, TableSet] | None = None,
    seed: int | None = None,
) -> PipelineRun:
    """Design, measure and decode one population; ``tables`` may be precomputed with :func:`design_tables`."""
    tables = tables if tables is not None else design_tables(params, channel)

    plan = build_plan(params, design_rng, seed=seed)
    first = measure_schedule(plan, build_schedule(plan), population, channel, outcome_rng)

    if params.algorithm is Algorithm.ADAPTIVE:
        decision = classify_references(plan, first, tables[PlanStage.STAGE1])
        stage2 = build_stage2_plan(plan, decision.selected_array, design_rng)
        second = measure_schedule(stage2, build_schedule(stage2), population, channel, outcome_rng)
        result = decode_adaptive(plan, first, stage2, second, tables)
        return PipelineRun(plans=(plan, stage2), outcomes=(first, second), result=result)

    if params.algorithm is Algorithm.LINEAR:
        result = decode_linear(plan, first, tables[PlanStage.LINEAR])
    else:
        result = decode_nonadaptive(plan, first, tables[PlanStage.NONADAPTIVE])
    return PipelineRun(plans=(plan,), outcomes=(first,), result=result)
