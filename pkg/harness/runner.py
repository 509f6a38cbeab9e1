"""
Monte Carlo experiment runner.

Each trial derives its own streams from ``(seed, trial)``, so trials can run
in any process and in any order; records are collected and written in trial
order, which keeps serial and parallel runs byte-identical.
"""

import multiprocessing
import time
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from loguru import logger

from common.utils.records import ensure_output_dir, write_json, write_jsonl, write_table
from core.reporting import ProgressReporter, ReportStatus
from decoder.pipelines import TableSet, design_tables, run_pipeline
from decoder.results import score_result
from design.plan import PlanStage
from design.serializers import plan_to_dict
from harness.config import ExperimentConfig
from harness.reports import TrialRecord, summarize, trials_frame
from model_core.channel import GapChannel
from model_core.population import Population, sample_population
from model_core.streams import derived_seed, trial_streams
from probmath.params import DesignParams

TRIALS_FILE = "trials.jsonl"
TRIALS_TABLE = "trials.csv"
SUMMARY_FILE = "summary.json"
PLANS_DIR = "plans"


@dataclass(frozen=True)
class TrialContext:
    """Everything a trial needs that does not depend on the trial index."""

    config: ExperimentConfig
    channel: GapChannel
    params: DesignParams
    tables: Mapping[PlanStage, TableSet]
    population: Population | None

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> "TrialContext":
        channel = config.channel()
        params = config.params()
        return cls(config, channel, params, design_tables(params, channel), config.fixed_population())


@dataclass(frozen=True)
class ExperimentResult:
    summary: dict[str, Any]
    records: list[TrialRecord]
    output: Path


def execute_trial(context: TrialContext, trial: int) -> tuple[TrialRecord, list[dict[str, Any]]]:
    """Run one trial; returns its record and, when requested, its serialized plans."""
    config = context.config
    started = time.perf_counter()
    streams = trial_streams(config.seed, trial)
    population = context.population or sample_population(context.params.instance, streams.defectives)
    run = run_pipeline(
        population,
        context.channel,
        context.params,
        streams.design,
        streams.outcomes,
        tables=context.tables,
        seed=config.seed,
    )
    score = score_result(run.result, population)
    record = TrialRecord(
        trial=trial,
        seed=derived_seed(config.seed, trial),
        tests_used=run.result.tests_used,
        exact_recovery=score.exact_recovery,
        false_positives=score.false_positives,
        false_negatives=score.false_negatives,
        undetermined=score.undetermined,
        failed_divisions=score.failed_divisions,
        stage_counts=dict(run.result.stage_counts),
        wall_time=time.perf_counter() - started if config.record_timing else None,
    )
    plans = [plan_to_dict(plan) for plan in run.plans] if config.save_plans else []
    return record, plans


_worker_context: TrialContext | None = None


def _init_worker(config: ExperimentConfig) -> None:
    global _worker_context
    _worker_context = TrialContext.from_config(config)


def _run_in_worker(trial: int) -> tuple[TrialRecord, list[dict[str, Any]]]:
    return execute_trial(_worker_context, trial)


def _write_plans(output: Path, trial: int, plans: list[dict[str, Any]]) -> None:
    if len(plans) == 1:
        write_json(output / PLANS_DIR / f"trial_{trial}.json", plans[0])
        return
    write_json(output / PLANS_DIR / f"trial_{trial}.json", {"stages": plans})


def run_experiment(config: ExperimentConfig, reporter: ProgressReporter | None = None) -> ExperimentResult:
    """
    Run every trial of ``config`` and write ``trials.jsonl``, ``trials.csv`` and ``summary.json``.

    The output directory is only created once the configuration, channel and
    parameters have been accepted.

    Raises:
        ConfigurationError: for an invalid configuration, before any trial runs.
        DegenerateInstanceError: if a decision band of the design is undefined.
    """
    reporter = reporter or ProgressReporter()

    step = "Validating configuration"
    try:
        reporter.report_step(step=step, status=ReportStatus.IN_PROGRESS)
        config.validate()
        reporter.report_step(step=step, status=ReportStatus.SUCCESS)

        step = "Recommending parameters"
        reporter.report_step(step=step, status=ReportStatus.IN_PROGRESS)
        context = TrialContext.from_config(config)
        output = ensure_output_dir(config.output)
        reporter.report_step(step=step, status=ReportStatus.SUCCESS, details={"predicted_tests": context.params.predicted_tests})

        step = "Trials"
        records: list[TrialRecord] = []
        if config.trials:
            logger.info(f"Running {config.trials} trials of {config.algorithm.value} on {config.instance} with {config.workers} worker(s)")
            if config.workers > 1:
                with multiprocessing.Pool(config.workers, initializer=_init_worker, initargs=(config,)) as pool:
                    results = pool.imap(_run_in_worker, range(config.trials))
                    records = _collect(results, config, output, reporter)
            else:
                records = _collect((execute_trial(context, t) for t in range(config.trials)), config, output, reporter)

        step = "Writing results"
        reporter.report_step(step=step, status=ReportStatus.IN_PROGRESS)
        summary = summarize(config, context.params, records)
        write_jsonl(output / TRIALS_FILE, (record.to_record() for record in records))
        write_table(output / TRIALS_TABLE, trials_frame(records))
        write_json(output / SUMMARY_FILE, summary)
        reporter.report_step(step=step, status=ReportStatus.SUCCESS, details={"output": str(output)})
    except Exception as e:
        reporter.report_failure(step=step, details={"error": type(e).__name__, "message": str(e)})
        raise

    if summary["recovery_rate"] is not None:
        logger.info(f"Exact recovery {summary['recoveries']}/{summary['trials']} ({summary['recovery_rate']:.3f})")
    return ExperimentResult(summary=summary, records=records, output=output)


def _collect(results, config: ExperimentConfig, output: Path, reporter: ProgressReporter) -> list[TrialRecord]:
    records = []
    for record, plans in results:
        records.append(record)
        if plans:
            _write_plans(output, record.trial, plans)
        if not record.exact_recovery:
            logger.debug(f"Trial {record.trial}: FP={record.false_positives} FN={record.false_negatives} U={record.undetermined}")
        reporter.report_percentage(step="Trials", progress=100 * len(records) // config.trials)
    return records
