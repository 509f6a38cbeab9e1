"""
Experiment configuration.

An :class:`ExperimentConfig` is validated as a whole on construction, before
any trial runs: instance constraints, file paths and the rule that a
parameter comes either from its error budget or from an explicit override,
never both.
"""

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config import settings
from core.exceptions import ConfigurationError
from model_core.channel import ChannelKind, GapChannel
from model_core.population import Instance, Population
from probmath.params import Algorithm, DesignParams, Epsilons, recommend_params

MAX_SEED = 2**64 - 1

# Budget -> overrides it conflicts with
BUDGET_CONFLICTS: dict[str, tuple[str, ...]] = {
    "eps2": ("R",),
    "eps3": ("I", "I1"),
    "eps4": ("I", "I2"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    d: int
    l: int
    u: int
    model: ChannelKind = ChannelKind.BERNOULLI
    table: Path | None = None
    algorithm: Algorithm = Algorithm.NONADAPTIVE
    eps2: float | None = None
    eps3: float | None = None
    eps4: float | None = None
    R: int | None = None
    I: int | None = None
    I1: int | None = None
    I2: int | None = None
    gamma2: float | None = None
    trials: int = 1
    seed: int = 0
    output: Path = field(default_factory=lambda: settings.OUTPUT_DIR)
    defectives: Path | None = None
    workers: int = field(default_factory=lambda: settings.WORKERS)
    save_plans: bool = False
    record_timing: bool = False
    max_failure_rate: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "model", ChannelKind(self.model))
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "output", Path(self.output))
        for name in ("table", "defectives"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, Path(value))
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            InvalidInstanceError: the instance violates ``0 <= l < u <= d < n``.
            ConfigurationError: any other invalid value or combination.
        """
        self.instance.require_sparse()
        if self.trials < 0:
            raise ConfigurationError(f"trials must be non-negative, got {self.trials}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be at least 1, got {self.workers}")
        if self.max_failure_rate is not None and not 0.0 <= self.max_failure_rate <= 1.0:
            raise ConfigurationError(f"max failure rate must lie in [0, 1], got {self.max_failure_rate}")

        for budget, overrides in BUDGET_CONFLICTS.items():
            if getattr(self, budget) is None:
                continue
            clashing = [name for name in overrides if getattr(self, name) is not None]
            if clashing:
                raise ConfigurationError(f"{budget} and explicit {', '.join(clashing)} are mutually exclusive")

        if self.model is ChannelKind.CUSTOM and self.table is None:
            raise ConfigurationError("the custom model needs --table")
        if self.model is not ChannelKind.CUSTOM and self.table is not None:
            raise ConfigurationError(f"--table only applies to the custom model, not {self.model.value}")
        for name in ("table", "defectives"):
            path = getattr(self, name)
            if path is not None and not path.exists():
                raise ConfigurationError(f"{name} file not found: {path}")
        self.channel()

    @property
    def instance(self) -> Instance:
        return Instance(n=self.n, d=self.d, l=self.l, u=self.u)

    @property
    def epsilons(self) -> Epsilons:
        default = settings.DEFAULT_EPSILON
        return Epsilons(
            eps2=self.eps2 if self.eps2 is not None else default,
            eps3=self.eps3 if self.eps3 is not None else default,
            eps4=self.eps4 if self.eps4 is not None else default,
        )

    def channel(self) -> GapChannel:
        if self.model is ChannelKind.CUSTOM:
            channel = GapChannel.from_file(self.table)
        else:
            channel = GapChannel(kind=self.model)
        channel.validate(self.l, self.u)
        return channel

    def params(self) -> DesignParams:
        return recommend_params(
            self.instance,
            self.algorithm,
            self.epsilons,
            R=self.R,
            I=self.I,
            I1=self.I1,
            I2=self.I2,
            gamma2=self.gamma2 if self.gamma2 is not None else 1.0,
        )

    def fixed_population(self) -> Population | None:
        """The explicit defective set, or ``None`` for uniformly random sampling per trial."""
        if self.defectives is None:
            return None
        return Population.from_items(self.instance, read_defectives(self.defectives))

    def to_dict(self) -> dict[str, Any]:
        """Configuration echo for result files; output location and worker count are left out."""
        return {
            "n": self.n,
            "d": self.d,
            "l": self.l,
            "u": self.u,
            "model": self.model.value,
            "table": str(self.table) if self.table else None,
            "algorithm": self.algorithm.value,
            "eps2": self.eps2,
            "eps3": self.eps3,
            "eps4": self.eps4,
            "R": self.R,
            "I": self.I,
            "I1": self.I1,
            "I2": self.I2,
            "gamma2": self.gamma2,
            "trials": self.trials,
            "seed": self.seed,
            "defectives": str(self.defectives) if self.defectives else None,
            "record_timing": self.record_timing,
            "max_failure_rate": self.max_failure_rate,
        }


def read_defectives(path: str | Path) -> list[int]:
    """
    Read an explicit defective set: a JSON array, or integers separated by whitespace or commas.

    Raises:
        ConfigurationError: for unreadable content or repeated items.
    """
    text = Path(path).read_text(encoding="utf-8").strip()
    try:
        items = json.loads(text) if text.startswith("[") else [int(token) for token in re.split(r"[\s,]+", text) if token]
    except (json.JSONDecodeError, ValueError) as e:
        raise ConfigurationError(f"cannot read defectives from {path}: {e}") from e
    if not all(isinstance(item, int) for item in items):
        raise ConfigurationError(f"defectives in {path} must be integers")
    if len(set(items)) != len(items):
        raise ConfigurationError(f"defectives in {path} contain duplicates")
    return items
