"""
Outcome tables, match-and-quantize rules and the three decoding pipelines.
"""

from decoder.outcomes import OutcomeTable, measure_schedule
from decoder.pipelines import (
    PipelineRun,
    decode_adaptive,
    decode_linear,
    decode_nonadaptive,
    design_tables,
    run_pipeline,
)
from decoder.results import DecodeResult, DivisionStatus, Score, score_result
from decoder.rules import (
    ItemLabel,
    RefClass,
    classify_item,
    classify_reference_group,
    estimate_reference_v,
    select_reference_group,
)

__all__ = (
    "DecodeResult",
    "DivisionStatus",
    "ItemLabel",
    "OutcomeTable",
    "PipelineRun",
    "RefClass",
    "Score",
    "classify_item",
    "classify_reference_group",
    "decode_adaptive",
    "decode_linear",
    "decode_nonadaptive",
    "design_tables",
    "estimate_reference_v",
    "measure_schedule",
    "run_pipeline",
    "score_result",
    "select_reference_group",
)
