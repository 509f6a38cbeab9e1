"""
Per-trial records, experiment summaries and the printable parameter and threshold tables.
"""

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
import pandas as pd
from scipy import stats

from core.exceptions import DegenerateInstanceError
from harness.config import ExperimentConfig
from model_core.channel import GapChannel
from model_core.population import Instance
from probmath.hypergeom import critical_hit_lower_bound, critical_hit_probability
from probmath.params import Algorithm, DesignParams, leading_term
from probmath.thresholds import ThresholdTable, compute_phi, compute_q, linear_v_range

TRIAL_SCHEMA = "stgt.trial/v1"
SUMMARY_SCHEMA = "stgt.summary/v1"
CONFIDENCE_LEVEL = 0.95
PRECISION = 12


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    tests_used: int
    exact_recovery: bool
    false_positives: int
    false_negatives: int
    undetermined: int
    failed_divisions: int
    stage_counts: dict[str, int] = field(default_factory=dict)
    wall_time: float | None = None

    def to_record(self) -> dict[str, Any]:
        return {"schema": TRIAL_SCHEMA, **asdict(self)}


def clopper_pearson(successes: int, trials: int, level: float = CONFIDENCE_LEVEL) -> tuple[float, float]:
    """Exact binomial confidence interval for ``successes / trials``."""
    if trials == 0:
        return 0.0, 1.0
    alpha = 1 - level
    lower = 0.0 if successes == 0 else float(stats.beta.ppf(alpha / 2, successes, trials - successes + 1))
    upper = 1.0 if successes == trials else float(stats.beta.ppf(1 - alpha / 2, successes + 1, trials - successes))
    return lower, upper


def summarize(config: ExperimentConfig, params: DesignParams, records: Sequence[TrialRecord]) -> dict[str, Any]:
    """
    Experiment summary document.

    With no trials only the configuration and parameter echo are filled in.
    """
    summary: dict[str, Any] = {
        "schema": SUMMARY_SCHEMA,
        "config": config.to_dict(),
        "params": params.to_dict(),
        "predicted_tests": params.predicted_tests,
        "leading_term": leading_term(params.algorithm, params.instance, params.epsilons),
        "trials": len(records),
        "recoveries": None,
        "recovery_rate": None,
        "failure_rate": None,
        "confidence": None,
        "mean_tests": None,
        "mean_false_positives": None,
        "mean_false_negatives": None,
        "mean_undetermined": None,
        "failed_divisions": None,
        "self_check": None,
    }
    if records:
        total = len(records)
        recoveries = sum(record.exact_recovery for record in records)
        failures = total - recoveries
        lower, upper = clopper_pearson(failures, total)
        summary.update(
            recoveries=recoveries,
            recovery_rate=recoveries / total,
            failure_rate=failures / total,
            confidence={"level": CONFIDENCE_LEVEL, "failure_rate_lower": lower, "failure_rate_upper": upper},
            mean_tests=float(np.mean([record.tests_used for record in records])),
            mean_false_positives=float(np.mean([record.false_positives for record in records])),
            mean_false_negatives=float(np.mean([record.false_negatives for record in records])),
            mean_undetermined=float(np.mean([record.undetermined for record in records])),
            failed_divisions=sum(record.failed_divisions for record in records),
        )
    if config.max_failure_rate is not None:
        upper = summary["confidence"]["failure_rate_upper"] if records else None
        summary["self_check"] = {
            "max_failure_rate": config.max_failure_rate,
            "failure_rate_upper": upper,
            "passed": upper is None or upper <= config.max_failure_rate,
        }
    return summary


def trials_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Plot-ready table, one row per trial."""
    columns = [
        "trial",
        "seed",
        "tests_used",
        "exact_recovery",
        "false_positives",
        "false_negatives",
        "undetermined",
        "failed_divisions",
        "wall_time",
    ]
    rows = [{column: getattr(record, column) for column in columns} for record in records]
    return pd.DataFrame(rows, columns=columns)


def params_report(params: DesignParams) -> pd.DataFrame:
    """Design parameters, predicted test count and the asymptotic leading term."""
    instance = params.instance
    rows: list[tuple[str, Any]] = [
        ("algorithm", params.algorithm.value),
        ("n", instance.n),
        ("d", instance.d),
        ("l", instance.l),
        ("u", instance.u),
        ("g", instance.g),
        ("eps2", params.epsilons.eps2),
        ("eps3", params.epsilons.eps3),
        ("eps4", params.epsilons.eps4),
        ("gamma1", params.gamma1),
        ("gamma2", params.gamma2),
        ("P", params.P),
        ("R", params.R),
        ("K", params.K),
    ]
    if params.algorithm is Algorithm.ADAPTIVE:
        rows += [("I1", params.I1), ("I2", params.I2), ("probe_size", params.probe_size)]
    else:
        rows.append(("I", params.I))
    term = leading_term(params.algorithm, instance, params.epsilons)
    rows += [
        ("ref_size", params.ref_size),
        ("ind_size", params.ind_size),
        ("predicted_tests", params.predicted_tests),
        *((f"tests_{stage}", count) for stage, count in params.stage_counts.items()),
        ("leading_term", term),
        ("tests_over_leading_term", params.predicted_tests / term if term else math.nan),
        ("decode_cost", params.decode_cost),
    ]
    if params.algorithm is not Algorithm.LINEAR:
        rows += [
            ("critical_hit_probability", critical_hit_probability(instance.n, instance.d, instance.l)),
            ("critical_hit_lower_bound", critical_hit_lower_bound(instance.n, instance.d, instance.l)),
        ]
    if params.overrides:
        rows.append(("overrides", ",".join(params.overrides)))
    return pd.DataFrame(rows, columns=["parameter", "value"])


def probe_report(
    instance: Instance,
    channel: GapChannel,
    m: int,
    v_range: Sequence[int] | None = None,
) -> pd.DataFrame:
    """
    Expected fractions and bands for every admissible ``v``, one row per ``v``.

    Band columns are per-test fractions; multiply by the family count for
    count thresholds. A zero ``q_v`` is reported in the ``note`` column
    instead of aborting the table.
    """
    v_range = tuple(v_range) if v_range is not None else (instance.l,)
    shown = sorted({w for v in v_range for w in (v - 1, v, v + 1) if 0 <= w <= instance.d})
    q = {v: compute_q(v, instance, channel, m) for v in shown}

    rows = []
    for v in shown:
        row: dict[str, Any] = {"v": v, "q": q[v]}
        notes = []
        if v in v_range:
            phi = {(v, w): compute_phi(v, w, instance, channel, m) for w in (0, 1)}
            try:
                table = ThresholdTable.from_values(q, phi, (v,), m=float(m))
            except DegenerateInstanceError as e:
                notes.append(str(e))
            else:
                row.update(
                    eta_below=table.eta_below[v],
                    eta_above=table.eta_above[v],
                    phi0=phi[(v, 0)],
                    phi1=phi[(v, 1)],
                    delta=table.delta[v],
                    band_lower=table.lower_edge(v, 1),
                    band_upper=table.upper_edge(v, 1),
                    item_boundary=table.item_boundary(v, 1),
                )
            if v == 0:
                notes.append("empty reference group, always critical")
        row["note"] = "; ".join(notes)
        rows.append(row)
    columns = ["v", "q", "eta_below", "eta_above", "phi0", "phi1", "delta", "band_lower", "band_upper", "item_boundary", "note"]
    return pd.DataFrame(rows, columns=columns)


def probe_v_range(instance: Instance, algorithm: Algorithm) -> tuple[int, ...]:
    return linear_v_range(instance) if algorithm is Algorithm.LINEAR else (instance.l,)


def format_frame(frame: pd.DataFrame) -> str:
    """Fixed-width text rendering with 12-digit floats."""
    return frame.to_string(index=False, float_format=lambda x: f"{x:.{PRECISION}f}", na_rep="")
