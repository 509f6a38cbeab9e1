"""
Plan serialization (``stgt.plan/v1``).

The document holds the seed, the parameter record and every group
membership, so a plan can be replayed or audited without the random streams.
"""

from pathlib import Path
from typing import Any

import numpy as np

from common.utils.records import read_json, write_json
from core.exceptions import ConfigurationError
from design.plan import DesignPlan, PlanStage
from probmath.params import DesignParams

PLAN_SCHEMA = "stgt.plan/v1"


def _optional_list(array: np.ndarray | None) -> list | None:
    return None if array is None else array.tolist()


def plan_to_dict(plan: DesignPlan) -> dict[str, Any]:
    return {
        "schema": PLAN_SCHEMA,
        "seed": plan.seed,
        "stage": plan.stage.value,
        "params": plan.params.to_dict(),
        "divisions": [members.tolist() for members in plan.divisions],
        "reference_groups": plan.reference_groups.tolist(),
        "families": _optional_list(plan.families),
        "probe_picks": _optional_list(plan.probe_picks),
        "probe_groups": _optional_list(plan.probe_groups),
        "selected": _optional_list(plan.selected),
    }


def plan_from_dict(data: dict[str, Any]) -> DesignPlan:
    """
    Rebuild a plan from :func:`plan_to_dict` output.

    Raises:
        ConfigurationError: for an unknown schema tag.
        DesignInvariantError: if the memberships do not form a valid plan.
    """
    if data.get("schema") != PLAN_SCHEMA:
        raise ConfigurationError(f"unsupported plan schema {data.get('schema')!r}, expected {PLAN_SCHEMA}")
    params = DesignParams.from_dict(data["params"])
    K = params.K

    def array(key: str, dtype=np.int64) -> np.ndarray | None:
        value = data.get(key)
        return None if value is None else np.asarray(value, dtype=dtype)

    reference_groups = np.asarray(data["reference_groups"], dtype=np.int64).reshape(
        len(data["divisions"]), params.R, params.ref_size
    )
    plan = DesignPlan(
        params=params,
        stage=PlanStage(data["stage"]),
        divisions=tuple(np.asarray(members, dtype=np.int64) for members in data["divisions"]),
        reference_groups=reference_groups,
        families=array("families", np.min_scalar_type(max(K - 1, 0))),
        probe_picks=array("probe_picks"),
        probe_groups=array("probe_groups"),
        selected=array("selected"),
        seed=data.get("seed"),
    )
    plan.check_invariants()
    return plan


def write_plan(path: str | Path, plan: DesignPlan) -> Path:
    return write_json(path, plan_to_dict(plan))


def read_plan(path: str | Path) -> DesignPlan:
    return plan_from_dict(read_json(path))
