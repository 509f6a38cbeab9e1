"""
Randomized pooling designs: divisions, reference groups, indicator families and schedules.
"""

from design.partitions import (
    balanced_sizes,
    build_divisions,
    random_partition,
    sample_indicator_families,
    sample_probe_groups,
    sample_reference_groups,
)
from design.plan import DesignPlan, PlanStage, build_plan, build_stage2_plan
from design.schedule import Schedule, build_schedule
from design.serializers import PLAN_SCHEMA, plan_from_dict, plan_to_dict, read_plan, write_plan

__all__ = (
    "PLAN_SCHEMA",
    "DesignPlan",
    "PlanStage",
    "Schedule",
    "balanced_sizes",
    "build_divisions",
    "build_plan",
    "build_schedule",
    "build_stage2_plan",
    "plan_from_dict",
    "plan_to_dict",
    "random_partition",
    "read_plan",
    "sample_indicator_families",
    "sample_probe_groups",
    "sample_reference_groups",
    "write_plan",
)
