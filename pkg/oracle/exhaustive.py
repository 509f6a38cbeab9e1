"""
Oversized end-to-end runs on tiny instances.

With ten times the recommended number of families the statistical error of
the non-adaptive decoder is negligible, so any failure points at a logic bug.
"""

from dataclasses import dataclass
from typing import Any

from loguru import logger

from config import settings
from core.exceptions import BudgetExceededError
from decoder.pipelines import design_tables, run_pipeline
from decoder.results import score_result
from model_core.channel import GapChannel
from model_core.population import Instance, sample_population
from model_core.streams import trial_streams
from probmath.params import Algorithm, DesignParams, Epsilons, recommend_params

DEFAULT_FAMILY_FACTOR = 10


@dataclass(frozen=True)
class ExhaustiveReport:
    params: DesignParams
    trials: int
    recoveries: int
    false_positives: int
    false_negatives: int
    undetermined: int
    failed_divisions: int

    @property
    def recovery_rate(self) -> float:
        return self.recoveries / self.trials if self.trials else 0.0

    def to_record(self) -> dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "trials": self.trials,
            "recoveries": self.recoveries,
            "recovery_rate": self.recovery_rate,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
            "undetermined": self.undetermined,
            "failed_divisions": self.failed_divisions,
        }


def exhaustive_decode_check(
    instance: Instance,
    channel: GapChannel,
    trials: int,
    seed: int,
    *,
    I: int | None = None,
    factor: int = DEFAULT_FAMILY_FACTOR,
    epsilons: Epsilons | None = None,
) -> ExhaustiveReport:
    """
    Run the non-adaptive pipeline ``trials`` times with an oversized family count.

    Args:
        I: family count; defaults to ``factor`` times the recommended value.
        epsilons: budgets for the other parameters; default ``settings.DEFAULT_EPSILON``.

    Raises:
        BudgetExceededError: for ``n`` above ``settings.EXHAUSTIVE_MAX_N``.
        InvalidInstanceError: for ``d >= n``.
    """
    if instance.n > settings.EXHAUSTIVE_MAX_N:
        raise BudgetExceededError(f"exhaustive decode check is limited to n <= {settings.EXHAUSTIVE_MAX_N}, got n={instance.n}")
    instance.require_sparse()
    epsilons = epsilons or Epsilons.uniform(settings.DEFAULT_EPSILON)
    recommended = recommend_params(instance, Algorithm.NONADAPTIVE, epsilons)
    params = recommend_params(instance, Algorithm.NONADAPTIVE, epsilons, I=I or factor * recommended.I)
    tables = design_tables(params, channel)

    recoveries = fp = fn = undetermined = failed = 0
    for trial in range(trials):
        streams = trial_streams(seed, trial)
        population = sample_population(instance, streams.defectives)
        run = run_pipeline(population, channel, params, streams.design, streams.outcomes, tables=tables)
        score = score_result(run.result, population)
        recoveries += score.exact_recovery
        fp += score.false_positives
        fn += score.false_negatives
        undetermined += score.undetermined
        failed += score.failed_divisions

    report = ExhaustiveReport(params, trials, recoveries, fp, fn, undetermined, failed)
    logger.info(f"Exhaustive check {instance} I={params.I}: {recoveries}/{trials} exact recoveries")
    return report
