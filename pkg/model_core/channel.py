"""
The stochastic threshold channel: pool-defective count -> probability of a positive outcome.

Counts at or below ``l`` always test negative and counts at or above ``u``
always test positive. Inside the gap the behaviour depends on the channel kind:

* ``bernoulli`` - positive with probability 1/2
* ``linear``    - ``(k - l) / (u - l)``
* ``custom``    - a user table, validated to be monotone with the fixed endpoints
"""

import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType

import numpy as np
from loguru import logger

from core.exceptions import ConfigurationError


class ChannelKind(str, Enum):
    BERNOULLI = "bernoulli"
    LINEAR = "linear"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GapChannel:
    kind: ChannelKind = ChannelKind.BERNOULLI
    custom_table: Mapping[int, float] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        if self.kind is ChannelKind.CUSTOM:
            if not self.custom_table:
                raise ConfigurationError("custom channel requires a probability table")
            table = {int(k): float(p) for k, p in self.custom_table.items()}
            object.__setattr__(self, "custom_table", MappingProxyType(table))
        elif self.custom_table is not None:
            raise ConfigurationError(f"{self.kind.value} channel does not take a probability table")

    @classmethod
    def from_file(cls, path: str | Path) -> "GapChannel":
        """Load a custom table stored as a JSON object ``{"k": probability}``."""
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"channel table not found: {path}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"channel table {path} is not valid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigurationError(f"channel table {path} must be a JSON object mapping counts to probabilities")
        return cls(kind=ChannelKind.CUSTOM, custom_table={int(k): float(v) for k, v in raw.items()})

    def validate(self, l: int, u: int) -> None:
        """
        Check a custom table against the thresholds.

        Every in-gap count must be present, entries must lie in [0, 1], be 0 at
        or below ``l``, 1 at or above ``u``, and be nondecreasing.
        """
        if self.kind is not ChannelKind.CUSTOM:
            return
        table = self.custom_table
        for k, p in table.items():
            if k < 0:
                raise ConfigurationError(f"custom channel: negative count {k}")
            if not 0.0 <= p <= 1.0:
                raise ConfigurationError(f"custom channel: probability {p} at k={k} outside [0, 1]")
            if k <= l and p != 0.0:
                raise ConfigurationError(f"custom channel: k={k} <= l={l} must have probability 0, got {p}")
            if k >= u and p != 1.0:
                raise ConfigurationError(f"custom channel: k={k} >= u={u} must have probability 1, got {p}")
        missing = [k for k in range(l + 1, u) if k not in table]
        if missing:
            raise ConfigurationError(f"custom channel: missing in-gap counts {missing}")
        previous = 0.0
        for k in range(l + 1, u):
            if table[k] < previous:
                raise ConfigurationError(f"custom channel: not monotone at k={k} ({table[k]} < {previous})")
            previous = table[k]

    def positive_prob(self, k: int, l: int, u: int, *, exact: bool = False) -> float | Fraction:
        """Probability that a pool holding ``k`` defectives tests positive."""
        if k < 0:
            raise ValueError(f"pool-defective count must be non-negative, got {k}")
        if k <= l:
            return Fraction(0) if exact else 0.0
        if k >= u:
            return Fraction(1) if exact else 1.0
        match self.kind:
            case ChannelKind.BERNOULLI:
                return Fraction(1, 2) if exact else 0.5
            case ChannelKind.LINEAR:
                return Fraction(k - l, u - l) if exact else (k - l) / (u - l)
            case ChannelKind.CUSTOM:
                p = self.custom_table[k]
                return Fraction(p) if exact else p

    def probability_vector(self, max_count: int, l: int, u: int) -> np.ndarray:
        """``positive_prob(k)`` for ``k = 0..max_count`` as a float array (lookup table for simulation)."""
        self.validate(l, u)
        return np.array([self.positive_prob(k, l, u) for k in range(max_count + 1)], dtype=np.float64)

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind.value}
        if self.custom_table is not None:
            data["table"] = {str(k): p for k, p in sorted(self.custom_table.items())}
        return data


def channel_positive_prob(channel: GapChannel, k: int, l: int, u: int) -> float:
    """
    Probability of a positive outcome for a pool with ``k`` defectives.

    Raises:
        ConfigurationError: for a custom table violating monotonicity or the boundary values.
    """
    channel.validate(l, u)
    p = channel.positive_prob(k, l, u)
    logger.trace(f"positive_prob(kind={channel.kind.value}, k={k}, l={l}, u={u}) = {p}")
    return p
