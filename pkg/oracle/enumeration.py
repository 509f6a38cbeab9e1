"""
Brute-force enumeration of expected positive fractions.

Everything here is computed by listing subsets and averaging exact channel
probabilities, with no closed-form sums, so it can certify the library
values. Enumeration is refused beyond ``settings.ORACLE_MAX_N`` items.
"""

import itertools
import math
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Any

from config import settings
from core.exceptions import BudgetExceededError, InvalidParameterError
from design.partitions import balanced_sizes
from model_core.channel import ChannelKind, GapChannel
from model_core.population import Instance, Population, TestPool
from probmath.thresholds import build_threshold_table, compute_phi, compute_q, linear_v_range

ORACLE_SCHEMA = "stgt.oracle/v1"
PARTITION_MAX_N = 8


def _check_budget(n: int, limit: int) -> None:
    if n > limit:
        raise BudgetExceededError(f"enumeration over n={n} items exceeds the budget of {limit}")


@cache
def _pool_count_histogram(n: int, d: int, v: int, w: int | None, m: int) -> Counter:
    """
    Histogram of pool-defective counts over every indicator group.

    Items ``0..d-1`` are defective. The reference group is ``{0..v-1}``. With
    ``w is None`` the indicator groups are all ``m``-subsets of the universe;
    otherwise a fixed item of bit ``w`` is joined by every ``(m-1)``-subset
    of the other items.
    """
    # thresholds do not affect counts
    population = Population.from_items(Instance(n=n, d=d, l=0, u=d), range(d))
    reference = range(v)
    histogram: Counter = Counter()
    if w is None:
        for group in itertools.combinations(range(n), m):
            histogram[population.count_in(TestPool.union(reference, group).members)] += 1
        return histogram
    item = v if w == 1 else d
    others = [j for j in range(n) if j != item]
    for companions in itertools.combinations(others, m - 1):
        histogram[population.count_in(TestPool.union(reference, (item,), companions).members)] += 1
    return histogram


def _average(histogram: Counter, instance: Instance, channel: GapChannel) -> Fraction:
    total = sum(histogram.values())
    weighted = sum(
        (count * channel.positive_prob(k, instance.l, instance.u, exact=True) for k, count in histogram.items()),
        Fraction(0),
    )
    return weighted / total


def enumerate_q(v: int, instance: Instance, m: int, channel: GapChannel) -> Fraction:
    """Exact ``q_v`` by averaging over all ``C(n, m)`` indicator groups."""
    _check_budget(instance.n, settings.ORACLE_MAX_N)
    if not 0 <= v <= instance.d or not 0 <= m <= instance.n:
        raise InvalidParameterError(f"enumerate_q needs 0 <= v <= d and 0 <= m <= n, got v={v}, m={m}")
    channel.validate(instance.l, instance.u)
    return _average(_pool_count_histogram(instance.n, instance.d, v, None, m), instance, channel)


def enumerate_phi(v: int, w: int, instance: Instance, m: int, channel: GapChannel) -> Fraction:
    """Exact ``phi_{v,w}`` by averaging over all companion sets of a fixed outside item."""
    _check_budget(instance.n, settings.ORACLE_MAX_N)
    if w not in (0, 1) or not 0 <= v < instance.u or not 1 <= m <= instance.n:
        raise InvalidParameterError(f"enumerate_phi needs w in {{0, 1}}, 0 <= v < u and 1 <= m <= n, got v={v}, w={w}, m={m}")
    if w == 1 and v >= instance.d:
        raise InvalidParameterError("no defective item outside the reference group")
    if w == 0 and instance.d >= instance.n:
        raise InvalidParameterError("no non-defective item in the universe")
    channel.validate(instance.l, instance.u)
    return _average(_pool_count_histogram(instance.n, instance.d, v, w, m), instance, channel)


def partition_block_law(n: int, parts: int, block: int = 0) -> dict[frozenset[int], Fraction]:
    """
    Law of one block of a uniformly random balanced partition, by enumerating every ordering of the universe.

    Partitions are formed the way the designs form them: shuffle, then slice
    contiguously with the remainder spread over the leading blocks.
    """
    _check_budget(n, PARTITION_MAX_N)
    sizes = balanced_sizes(n, parts)
    if not 0 <= block < parts:
        raise InvalidParameterError(f"block {block} outside 0..{parts - 1}")
    start = int(sizes[:block].sum())
    stop = start + int(sizes[block])
    counts: Counter = Counter(frozenset(order[start:stop]) for order in itertools.permutations(range(n)))
    total = math.factorial(n)
    return {members: Fraction(count, total) for members, count in counts.items()}


def uniform_subset_law(n: int, size: int) -> dict[frozenset[int], Fraction]:
    probability = Fraction(1, math.comb(n, size))
    return {frozenset(group): probability for group in itertools.combinations(range(n), size)}


@dataclass(frozen=True)
class EnumerationReport:
    """One library value checked against its enumerated counterpart."""

    instance: Instance
    channel: ChannelKind
    quantity: str
    m: int
    exact_value: Fraction
    library_value: float

    @property
    def abs_diff(self) -> float:
        return abs(float(self.exact_value - Fraction(self.library_value)))

    @property
    def passed(self) -> bool:
        return self.abs_diff <= settings.ORACLE_TOLERANCE

    def to_record(self) -> dict[str, Any]:
        return {
            "schema": ORACLE_SCHEMA,
            "instance": self.instance.to_dict(),
            "channel": self.channel.value,
            "quantity": self.quantity,
            "m": self.m,
            "exact_value": f"{self.exact_value.numerator}/{self.exact_value.denominator}",
            "library_value": self.library_value,
            "abs_diff": self.abs_diff,
        }


def admissible_v(instance: Instance, channel: GapChannel) -> tuple[int, ...]:
    if channel.kind is ChannelKind.LINEAR:
        return (instance.l, *linear_v_range(instance))
    return (instance.l,)


def check_instance(instance: Instance, channel: GapChannel) -> list[EnumerationReport]:
    """
    Compare ``q_v``, ``phi_{v,w}``, the band edges and the item boundary with enumeration.

    Edges are checked at every admissible ``v``: ``l`` for every channel, plus
    ``l < v < u`` for the linear channel. Indicator sizes are the block sizes of
    a balanced partition into ``d - l`` blocks.
    """
    reports: list[EnumerationReport] = []
    n, d, l, u = instance.n, instance.d, instance.l, instance.u

    def report(quantity: str, m: int, exact: Fraction, library: float) -> None:
        reports.append(EnumerationReport(instance, channel.kind, quantity, m, exact, float(library)))

    for m in sorted({int(s) for s in balanced_sizes(n, d - l)}):
        q = {v: enumerate_q(v, instance, m, channel) for v in range(d + 1)}
        for v, exact in q.items():
            report(f"q_{v}", m, exact, compute_q(v, instance, channel, m))
        phi = {}
        for v in range(u):
            for w in (0, 1):
                if w == 0 and d >= n:
                    continue
                phi[(v, w)] = enumerate_phi(v, w, instance, m, channel)
                report(f"phi_{v},{w}", m, phi[(v, w)], compute_phi(v, w, instance, channel, m))
        # bands are undefined where q_v or phi_{v,0} vanishes
        v_range = [v for v in admissible_v(instance, channel) if q[v] != 0 and phi.get((v, 0), 0) != 0]
        if not v_range:
            continue
        table = build_threshold_table(instance, channel, m, v_range)
        for v in v_range:
            below = q[v - 1] if v > 0 else Fraction(0)
            report(f"lower_edge_{v}", m, (below + q[v]) / 2, table.lower_edge(v, 1))
            report(f"upper_edge_{v}", m, (q[v] + q[v + 1]) / 2, table.upper_edge(v, 1))
            report(f"item_boundary_{v}", m, (phi[(v, 0)] + phi[(v, 1)]) / 2, table.item_boundary(v, 1))
    return reports


def sweep_instances(max_n: int, min_n: int = 2) -> Iterator[Instance]:
    """Every instance with ``min_n <= n <= max_n``, ``1 <= d <= n / 2`` and ``0 <= l < u <= d``."""
    for n in range(min_n, max_n + 1):
        for d in range(1, n // 2 + 1):
            for l in range(d):
                for u in range(l + 1, d + 1):
                    yield Instance(n=n, d=d, l=l, u=u)


def oracle_sweep(
    max_n: int,
    kinds: tuple[ChannelKind, ...] = (ChannelKind.BERNOULLI, ChannelKind.LINEAR),
    min_n: int = 2,
) -> Iterator[EnumerationReport]:
    """Reports for every swept instance and channel kind, in a fixed order."""
    _check_budget(max_n, settings.ORACLE_MAX_N)
    for instance in sweep_instances(max_n, min_n):
        for kind in kinds:
            yield from check_instance(instance, GapChannel(kind=kind))


def worst_difference(reports: list[EnumerationReport]) -> float:
    return max((report.abs_diff for report in reports), default=0.0)
