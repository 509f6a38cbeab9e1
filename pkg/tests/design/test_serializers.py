import json

import numpy as np
import pytest

from core.exceptions import ConfigurationError, DesignInvariantError
from design.plan import build_plan, build_stage2_plan
from design.serializers import PLAN_SCHEMA, plan_to_dict, read_plan, write_plan


def test_plan_file_round_trip(small_params, rng, tmp_path):
    plan = build_plan(small_params, rng, seed=99)
    path = write_plan(tmp_path / "plans" / "trial_0.json", plan)
    loaded = read_plan(path)
    assert loaded.seed == 99
    assert loaded.params == plan.params
    assert np.array_equal(loaded.families, plan.families)
    assert np.array_equal(loaded.reference_groups, plan.reference_groups)
    assert np.array_equal(loaded.probe_picks, plan.probe_picks)


def test_stage2_document(adaptive_params, rng):
    stage1 = build_plan(adaptive_params, rng)
    document = plan_to_dict(build_stage2_plan(stage1, np.array([0, -1, 1]), rng))
    assert document["schema"] == PLAN_SCHEMA
    assert document["stage"] == "stage2"
    assert document["selected"] == [0, -1, 1]
    assert document["probe_groups"] is None


def test_unknown_schema_rejected(small_params, rng, tmp_path):
    path = write_plan(tmp_path / "plan.json", build_plan(small_params, rng))
    document = json.loads(path.read_text())
    document["schema"] = "stgt.plan/v0"
    path.write_text(json.dumps(document))
    with pytest.raises(ConfigurationError):
        read_plan(path)


def test_tampered_plan_rejected(small_params, rng, tmp_path):
    path = write_plan(tmp_path / "plan.json", build_plan(small_params, rng))
    document = json.loads(path.read_text())
    document["divisions"][0] = document["divisions"][0][:-1]
    path.write_text(json.dumps(document))
    with pytest.raises(DesignInvariantError):
        read_plan(path)
