"""
Exact probability computations, decision bands and parameter recommendation.
"""

from probmath.hypergeom import (
    critical_hit_lower_bound,
    critical_hit_probability,
    hypergeom_pmf,
    round_half_up,
)
from probmath.params import Algorithm, DesignParams, Epsilons, leading_term, recommend_params
from probmath.thresholds import (
    ThresholdTable,
    build_threshold_table,
    compute_phi,
    compute_q,
    item_error_bounds,
    linear_v_range,
    reference_error_bounds,
    tables_for_sizes,
)

__all__ = (
    "Algorithm",
    "DesignParams",
    "Epsilons",
    "ThresholdTable",
    "build_threshold_table",
    "compute_phi",
    "compute_q",
    "critical_hit_lower_bound",
    "critical_hit_probability",
    "hypergeom_pmf",
    "item_error_bounds",
    "leading_term",
    "linear_v_range",
    "recommend_params",
    "reference_error_bounds",
    "round_half_up",
    "tables_for_sizes",
)
