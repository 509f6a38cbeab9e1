"""
Command-line surface: ``simulate``, ``params``, ``probe`` and ``oracle-sweep``.

Exit codes: 0 success, 2 invalid configuration, 3 acceptance threshold breached.
"""

import functools
from pathlib import Path

import click
from loguru import logger

from common.utils.records import write_json, write_jsonl
from config import settings
from config.logging import configure_logging
from core.exceptions import BudgetExceededError, ConfigurationError, DegenerateInstanceError, InvalidParameterError
from harness.config import ExperimentConfig
from harness.reports import format_frame, params_report, probe_report, probe_v_range
from harness.runner import run_experiment
from model_core.channel import ChannelKind, GapChannel
from model_core.population import Instance
from oracle.enumeration import oracle_sweep, worst_difference
from oracle.exhaustive import exhaustive_decode_check
from probmath.params import Algorithm

EXIT_INVALID_CONFIGURATION = 2
EXIT_THRESHOLD_BREACH = 3

MODELS = click.Choice([kind.value for kind in ChannelKind])
ALGORITHMS = click.Choice([algorithm.value for algorithm in Algorithm])


def instance_options(func):
    for option in reversed(
        [
            click.option("--n", "n", type=int, required=True, help="Number of items"),
            click.option("--d", "d", type=int, required=True, help="Number of defectives"),
            click.option("--l", "l", type=int, required=True, help="Lower threshold"),
            click.option("--u", "u", type=int, required=True, help="Upper threshold"),
            click.option("--model", type=MODELS, default=ChannelKind.BERNOULLI.value, show_default=True),
            click.option("--table", type=click.Path(path_type=Path), default=None, help="Probability table for --model custom"),
        ]
    ):
        func = option(func)
    return func


def budget_options(func):
    for option in reversed(
        [
            click.option("--algorithm", type=ALGORITHMS, default=Algorithm.NONADAPTIVE.value, show_default=True),
            click.option("--eps2", type=float, default=None, help="Budget for a division without a critical group"),
            click.option("--eps3", type=float, default=None, help="Budget for reference-group misclassification"),
            click.option("--eps4", type=float, default=None, help="Budget for item misclassification"),
            click.option("--R", "R", type=int, default=None, help="Reference groups per division"),
            click.option("--I", "I", type=int, default=None, help="Indicator families"),
            click.option("--I1", "I1", type=int, default=None, help="Adaptive stage 1 probe groups"),
            click.option("--I2", "I2", type=int, default=None, help="Adaptive stage 2 families"),
            click.option("--gamma2", type=float, default=None, help="Indicator-size ratio in (0, 1]"),
        ]
    ):
        func = option(func)
    return func


def handle_errors(func):
    """Map configuration problems to exit code 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (BudgetExceededError, ConfigurationError, DegenerateInstanceError, InvalidParameterError) as e:
            logger.error(str(e))
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(EXIT_INVALID_CONFIGURATION) from e

    return wrapper


@click.group()
@click.option("--log-level", default=None, help="Console log level (default from STGT_LOG_LEVEL)")
@click.option("--log-file", default=None, help="Log file; empty string disables it")
def main(log_level: str | None, log_file: str | None) -> None:
    """Stochastic threshold group testing: designs, simulation and decoding."""
    configure_logging(level=log_level, log_file=log_file)


@main.command()
@instance_options
@budget_options
@click.option("--trials", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="64-bit master seed")
@click.option("--defectives", type=click.Path(path_type=Path), default=None, help="File with an explicit defective set")
@click.option("--out", "output", type=click.Path(path_type=Path), default=None, help="Output directory")
@click.option("--workers", type=int, default=None, help="Worker processes (default from STGT_WORKERS)")
@click.option("--save-plans", is_flag=True, help="Write every trial's design plan")
@click.option("--record-timing", is_flag=True, help="Record wall time per trial (breaks byte-identical output)")
@click.option("--max-failure-rate", type=float, default=None, help="Exit 3 if the 95% upper bound on the failure rate exceeds this")
@handle_errors
def simulate(output: Path | None, workers: int | None, **options) -> None:
    """Run a Monte Carlo experiment and write trials.jsonl, trials.csv and summary.json."""
    config = ExperimentConfig(
        output=output or settings.OUTPUT_DIR,
        workers=workers or settings.WORKERS,
        **options,
    )
    result = run_experiment(config)
    summary = result.summary
    click.echo(f"predicted tests: {summary['predicted_tests']}")
    if summary["trials"]:
        interval = summary["confidence"]
        click.echo(
            f"exact recovery: {summary['recoveries']}/{summary['trials']} "
            f"(failure rate {summary['failure_rate']:.4f}, 95% CI [{interval['failure_rate_lower']:.4f}, "
            f"{interval['failure_rate_upper']:.4f}])"
        )
    click.echo(f"results written to {result.output}")
    check = summary["self_check"]
    if check is not None and not check["passed"]:
        click.echo(
            f"Self-check failed: failure-rate upper bound {check['failure_rate_upper']:.4f} exceeds {check['max_failure_rate']}",
            err=True,
        )
        raise SystemExit(EXIT_THRESHOLD_BREACH)


@main.command()
@instance_options
@budget_options
@handle_errors
def params(**options) -> None:
    """Print recommended parameters, predicted test count and the leading term."""
    config = ExperimentConfig(trials=0, **options)
    click.echo(format_frame(params_report(config.params())))


@main.command()
@instance_options
@click.option("--algorithm", type=ALGORITHMS, default=Algorithm.NONADAPTIVE.value, show_default=True)
@click.option("--m", "m", type=int, default=None, help="Indicator group size (default: the design's block size)")
@click.option("--gamma2", type=float, default=1.0, show_default=True)
@handle_errors
def probe(n: int, d: int, l: int, u: int, model: str, table: Path | None, algorithm: str, m: int | None, gamma2: float) -> None:
    """Print q, eta, phi, Delta and band edges for every admissible v."""
    config = ExperimentConfig(n=n, d=d, l=l, u=u, model=model, table=table, algorithm=algorithm, gamma2=gamma2, trials=0)
    params = config.params()
    if m is None:
        m = params.probe_size if params.algorithm is Algorithm.ADAPTIVE else params.ind_size
    frame = probe_report(config.instance, config.channel(), m, probe_v_range(config.instance, params.algorithm))
    click.echo(f"n={n} d={d} l={l} u={u} model={model} m={m}")
    click.echo(format_frame(frame))


@main.command("oracle-sweep")
@click.option("--max-n", type=int, default=12, show_default=True)
@click.option("--min-n", type=int, default=2, show_default=True)
@click.option("--model", "models", type=click.Choice([ChannelKind.BERNOULLI.value, ChannelKind.LINEAR.value]), multiple=True)
@click.option("--out", "output", type=click.Path(path_type=Path), default=None, help="Output directory")
@click.option("--decode-trials", type=int, default=0, show_default=True, help="Also run the oversized decode check")
@click.option("--decode-instance", nargs=4, type=int, default=(20, 3, 0, 1), show_default=True, help="n d l u of the decode check")
@click.option("--I", "I", type=int, default=None, help="Families for the decode check (default 10x recommended)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--min-recovery", type=float, default=0.99, show_default=True)
@handle_errors
def oracle_sweep_command(
    max_n: int,
    min_n: int,
    models: tuple[str, ...],
    output: Path | None,
    decode_trials: int,
    decode_instance: tuple[int, int, int, int],
    I: int | None,
    seed: int,
    min_recovery: float,
) -> None:
    """Check q, phi and band edges against exhaustive enumeration; optionally run the decode check."""
    output = output or settings.OUTPUT_DIR
    kinds = tuple(ChannelKind(model) for model in models) or (ChannelKind.BERNOULLI, ChannelKind.LINEAR)
    reports = list(oracle_sweep(max_n, kinds, min_n))
    failed = [report for report in reports if not report.passed]
    write_jsonl(Path(output) / "oracle.jsonl", (report.to_record() for report in reports))
    click.echo(f"{len(reports)} quantities checked, worst |difference| = {worst_difference(reports):.3e}, {len(failed)} above tolerance")
    breach = bool(failed)

    if decode_trials:
        instance = Instance(*decode_instance)
        exhaustive = exhaustive_decode_check(instance, GapChannel(), decode_trials, seed, I=I)
        write_json(Path(output) / "exhaustive.json", exhaustive.to_record())
        click.echo(f"decode check on {instance}: recovery rate {exhaustive.recovery_rate:.4f} over {decode_trials} trials")
        breach = breach or exhaustive.recovery_rate < min_recovery

    if breach:
        raise SystemExit(EXIT_THRESHOLD_BREACH)

