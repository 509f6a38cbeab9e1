import numpy as np
import pytest

from core.exceptions import InvalidParameterError
from design.plan import PlanStage, build_plan, build_stage2_plan
from design.schedule import build_schedule


def test_nonadaptive_schedule(small_params, rng):
    schedule = build_schedule(build_plan(small_params, rng))
    assert schedule.shape == (3, 3, 5, 3)
    assert len(schedule) == 3 * 3 * 5 * 3 == small_params.predicted_tests
    pairs = list(schedule.pairs())
    assert pairs[0] == (0, 0, 0, 0)
    assert pairs[-1] == (2, 2, 4, 2)
    assert len(set(pairs)) == len(pairs)
    assert schedule.as_array().tolist() == [list(pair) for pair in pairs]


def test_stage1_schedule(adaptive_params, rng):
    schedule = build_schedule(build_plan(adaptive_params, rng))
    assert schedule.stage is PlanStage.STAGE1
    assert len(schedule) == adaptive_params.stage_counts["stage1"] == 3 * 3 * 4


def test_stage2_schedule_skips_failed_divisions(adaptive_params, rng):
    stage1 = build_plan(adaptive_params, rng)
    schedule = build_schedule(build_stage2_plan(stage1, np.array([1, -1, 2]), rng))
    assert len(schedule) == 2 * 5 * 3
    pairs = schedule.as_array()
    assert set(pairs[:, 0].tolist()) == {0, 2}
    assert set(pairs[pairs[:, 0] == 0, 1].tolist()) == {1}
    assert set(pairs[pairs[:, 0] == 2, 1].tolist()) == {2}
    assert pairs.tolist() == [list(pair) for pair in schedule.pairs()]


def test_stage2_schedule_with_every_division_selected(adaptive_params, rng):
    stage1 = build_plan(adaptive_params, rng)
    schedule = build_schedule(build_stage2_plan(stage1, np.array([0, 0, 0]), rng))
    assert len(schedule) == adaptive_params.stage_counts["stage2"]


def test_variant_must_match_plan(small_params, rng):
    with pytest.raises(InvalidParameterError):
        build_schedule(build_plan(small_params, rng), PlanStage.STAGE1)
