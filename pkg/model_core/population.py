"""
Problem instances and populations.

An :class:`Instance` is the public shape of a problem (what the designer and
decoder know); a :class:`Population` adds the hidden defective set.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from core.exceptions import InvalidInstanceError


@dataclass(frozen=True)
class Instance:
    """Items ``0..n-1``, ``d`` defectives, lower threshold ``l`` and upper threshold ``u``."""

    n: int
    d: int
    l: int
    u: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise InvalidInstanceError("l >= 0", f"invalid instance: l={self.l} must be non-negative")
        if not self.l < self.u:
            raise InvalidInstanceError("l < u", f"invalid instance: l={self.l} must be smaller than u={self.u}")
        if self.u > self.d:
            raise InvalidInstanceError("u <= d", f"invalid instance: u={self.u} exceeds d={self.d}")
        if self.d > self.n:
            raise InvalidInstanceError("d <= n", f"invalid instance: d={self.d} exceeds n={self.n}")

    @property
    def g(self) -> int:
        """Gap ``u - l - 1``: the number of in-gap defective counts."""
        return self.u - self.l - 1

    def require_sparse(self) -> None:
        """Reject ``d == n``; designs need at least one non-defective item."""
        if self.d >= self.n:
            raise InvalidInstanceError("d < n", f"invalid instance: d={self.d} must be smaller than n={self.n}")

    def to_dict(self) -> dict[str, int]:
        return {"n": self.n, "d": self.d, "l": self.l, "u": self.u, "g": self.g}


@dataclass(frozen=True)
class Population:
    """An instance together with its hidden defective set."""

    instance: Instance
    defectives: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(self.defectives) != self.instance.d:
            raise InvalidInstanceError(
                "|defectives| = d",
                f"invalid instance: {len(self.defectives)} defectives given, d={self.instance.d}",
            )
        if self.defectives and (min(self.defectives) < 0 or max(self.defectives) >= self.instance.n):
            raise InvalidInstanceError("defectives within 0..n-1", "invalid instance: defective index out of range")

    @classmethod
    def from_items(cls, instance: Instance, defectives: Iterable[int]) -> "Population":
        return cls(instance=instance, defectives=frozenset(int(j) for j in defectives))

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def d(self) -> int:
        return self.instance.d

    @property
    def l(self) -> int:
        return self.instance.l

    @property
    def u(self) -> int:
        return self.instance.u

    @property
    def g(self) -> int:
        return self.instance.g

    @cached_property
    def defective_array(self) -> np.ndarray:
        """Sorted defective indices."""
        return np.array(sorted(self.defectives), dtype=np.int64)

    @cached_property
    def indicator(self) -> np.ndarray:
        """Boolean vector ``x`` with ``x[j]`` true iff item ``j`` is defective."""
        x = np.zeros(self.n, dtype=bool)
        x[self.defective_array] = True
        x.setflags(write=False)
        return x

    def count_in(self, members: Iterable[int]) -> int:
        """Number of defectives among ``members``."""
        return len(self.defectives.intersection(members))


@dataclass(frozen=True)
class TestPool:
    """The set of items measured jointly by one threshold test."""

    __test__ = False  # not a pytest test class

    members: frozenset[int]

    @classmethod
    def union(cls, *groups: Iterable[int]) -> "TestPool":
        members: set[int] = set()
        for group in groups:
            members.update(int(j) for j in group)
        return cls(members=frozenset(members))

    def __len__(self) -> int:
        return len(self.members)


def sample_population(instance: Instance, rng: np.random.Generator) -> Population:
    """Draw the defective set uniformly among all ``d``-subsets of the universe."""
    chosen = rng.choice(instance.n, size=instance.d, replace=False)
    return Population.from_items(instance, chosen.tolist())
