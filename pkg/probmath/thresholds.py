"""
Expected positive fractions and the decision bands built from them.

``q_v`` is the chance that a reference group holding ``v`` defectives, pooled
with a uniform indicator group of ``m`` items, tests positive. ``phi_{v,w}``
is the same chance when the indicator group is known to contain a fixed item
of bit ``w``. Band edges sit halfway between neighbouring expectations, which
makes every edge linear in the underlying probabilities; :meth:`ThresholdTable.blend`
relies on this to average tables of different block sizes exactly.
"""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from loguru import logger

from core.exceptions import DegenerateInstanceError, InvalidParameterError
from model_core.channel import GapChannel
from model_core.population import Instance
from probmath.hypergeom import hypergeom_pmf, hypergeom_vector, support

Number = float | Fraction


def _expected_positive(
    base: int,
    s: int,
    n: int,
    marked: int,
    instance: Instance,
    channel: GapChannel,
    exact: bool,
) -> Number:
    """``sum_w hyp(w; s, n, marked) * p(base + w)``."""
    if exact:
        return sum(
            (
                hypergeom_pmf(w, s, n, marked, exact=True)
                * channel.positive_prob(base + w, instance.l, instance.u, exact=True)
                for w in support(s, n, marked)
            ),
            Fraction(0),
        )
    values, probabilities = hypergeom_vector(s, n, marked)
    positive = channel.probability_vector(base + int(values[-1]), instance.l, instance.u)[base + values]
    return math.fsum(probabilities * positive)


def compute_q(v: int, instance: Instance, channel: GapChannel, m: int, *, exact: bool = False) -> Number:
    """
    Expected positive fraction for a reference group with ``v`` defectives and indicator groups of ``m`` items.

    The indicator group is a uniform ``m``-subset of the universe, so the extra
    defectives it brings follow a hypergeometric law over the ``d - v``
    defectives outside the reference group.
    """
    if not 0 <= v <= instance.d:
        raise InvalidParameterError(f"q_v needs 0 <= v <= d, got v={v}, d={instance.d}")
    if not 0 <= m <= instance.n:
        raise InvalidParameterError(f"indicator size m={m} outside 0..{instance.n}")
    return _expected_positive(v, m, instance.n, instance.d - v, instance, channel, exact)


def compute_phi(v: int, w: int, instance: Instance, channel: GapChannel, m: int, *, exact: bool = False) -> Number:
    """
    Expected positive fraction for an item of bit ``w`` tested with a reference group holding ``v`` defectives.

    The item's ``m - 1`` companions are a uniform subset of the other ``n - 1``
    items.

    Raises:
        InvalidParameterError: when ``v >= u`` (the reference group alone
            saturates the channel) or ``w`` is not a bit.
    """
    if w not in (0, 1):
        raise InvalidParameterError(f"item bit must be 0 or 1, got {w}")
    if not 0 <= v < instance.u:
        raise InvalidParameterError(f"phi_v is defined for 0 <= v < u={instance.u}, got v={v}")
    if not 1 <= m <= instance.n:
        raise InvalidParameterError(f"indicator size m={m} outside 1..{instance.n}")
    return _expected_positive(v + w, m - 1, instance.n - 1, instance.d - v - w, instance, channel, exact)


@dataclass(frozen=True)
class ThresholdTable:
    """Expected fractions and band half-widths for every admissible reference count ``v``."""

    v_range: tuple[int, ...]
    q: Mapping[int, Number]
    eta_below: Mapping[int, Number]
    eta_above: Mapping[int, Number]
    phi: Mapping[tuple[int, int], Number]
    delta: Mapping[int, Number]
    m: float = field(default=0.0)

    @classmethod
    def from_values(
        cls,
        q: Mapping[int, Number],
        phi: Mapping[tuple[int, int], Number],
        v_range: Iterable[int],
        m: float = 0.0,
    ) -> "ThresholdTable":
        """
        Derive the band half-widths from expected fractions.

        ``q`` must hold ``v - 1``, ``v`` and ``v + 1`` for every ``v`` in range
        (``q_{-1}`` is taken as 0); ``phi`` must hold ``(v, 0)`` and ``(v, 1)``.

        Raises:
            DegenerateInstanceError: if ``q_v`` or ``phi_{v,0}`` is zero for a ``v`` in range.
        """
        v_range = tuple(sorted(set(v_range)))
        q = dict(q)
        eta_below, eta_above, delta = {}, {}, {}
        for v in v_range:
            if v == 0:
                q.setdefault(-1, 0 * q[0])
            if q[v] == 0:
                raise DegenerateInstanceError(v)
            eta_below[v] = (q[v] - q[v - 1]) / (2 * q[v])
            eta_above[v] = (q[v + 1] - q[v]) / (2 * q[v])
            phi0, phi1 = phi[(v, 0)], phi[(v, 1)]
            if phi0 == 0:
                raise DegenerateInstanceError(v, f"degenerate instance: phi_{v},0 = 0, item boundary undefined")
            delta[v] = (phi1 - phi0) / (2 * phi0)
        return cls(
            v_range=v_range,
            q=MappingProxyType(q),
            eta_below=MappingProxyType(eta_below),
            eta_above=MappingProxyType(eta_above),
            phi=MappingProxyType(dict(phi)),
            delta=MappingProxyType(delta),
            m=m,
        )

    @classmethod
    def blend(cls, tables: Sequence["ThresholdTable"], weights: Sequence[float]) -> "ThresholdTable":
        """
        Weighted average of tables sharing a ``v_range``.

        Used when the tests behind one count come from blocks of different
        sizes: with ``weights`` equal to the number of tests per block size,
        the blended band edges equal the sums of the per-size edges.
        """
        if len(tables) != len(weights) or not tables:
            raise InvalidParameterError("blend needs one weight per table")
        pairs = [(t, w) for t, w in zip(tables, weights, strict=True) if w]
        if not pairs:
            raise InvalidParameterError("blend weights must not all be zero")
        if len(pairs) == 1:
            return pairs[0][0]
        v_range = pairs[0][0].v_range
        if any(t.v_range != v_range for t, _ in pairs):
            raise InvalidParameterError("cannot blend tables with different v ranges")
        total = sum(w for _, w in pairs)
        q = {k: sum(t.q[k] * w for t, w in pairs) / total for k in pairs[0][0].q}
        phi = {k: sum(t.phi[k] * w for t, w in pairs) / total for k in pairs[0][0].phi}
        m = sum(t.m * w for t, w in pairs) / total
        return cls.from_values(q, phi, v_range, m=m)

    def _check(self, v: int) -> None:
        if v not in self.delta:
            raise InvalidParameterError(f"v={v} is not in the table range {self.v_range}")

    def lower_edge(self, v: int, I: int) -> float:
        """Smallest positive count (over ``I`` tests) still matched to ``v``."""
        self._check(v)
        return I * self.q[v] * (1 - self.eta_below[v])

    def upper_edge(self, v: int, I: int) -> float:
        self._check(v)
        return I * self.q[v] * (1 + self.eta_above[v])

    def item_midpoint(self, v: int) -> Number:
        """Per-test item boundary ``phi_{v,0} * (1 + Delta_v)``."""
        self._check(v)
        return self.phi[(v, 0)] * (1 + self.delta[v])

    def item_boundary(self, v: int, I: int) -> float:
        return I * self.item_midpoint(v)

    def usable(self, v: int) -> bool:
        """Whether a reference group estimated at ``v`` can be used to decode items."""
        if v not in self.delta:
            return False
        return self.q[v - 1] < self.q[v] < self.q[v + 1] and self.phi[(v, 1)] > self.phi[(v, 0)]


def build_threshold_table(
    instance: Instance,
    channel: GapChannel,
    m: int,
    v_range: Iterable[int] | None = None,
    *,
    exact: bool = False,
) -> ThresholdTable:
    """
    Compute ``q``, ``phi`` and the derived bands for indicator groups of ``m`` items.

    ``v_range`` defaults to ``{l}`` (the Bernoulli decoders); the linear decoder
    passes :func:`linear_v_range`.

    Raises:
        InvalidParameterError: for ``v`` outside ``0..u-1``.
        DegenerateInstanceError: if a required ``q_v`` or ``phi_{v,0}`` is zero.
    """
    v_range = tuple(sorted(set(v_range))) if v_range is not None else (instance.l,)
    if not v_range:
        raise InvalidParameterError("threshold table needs at least one v")
    for v in v_range:
        if not 0 <= v < instance.u:
            raise InvalidParameterError(f"v={v} outside the admissible range 0..{instance.u - 1}")

    q: dict[int, Number] = {}
    phi: dict[tuple[int, int], Number] = {}
    for v in v_range:
        for neighbour in (v - 1, v, v + 1):
            if neighbour >= 0 and neighbour not in q:
                q[neighbour] = compute_q(neighbour, instance, channel, m, exact=exact)
        for w in (0, 1):
            phi[(v, w)] = compute_phi(v, w, instance, channel, m, exact=exact)

    table = ThresholdTable.from_values(q, phi, v_range, m=float(m))
    logger.debug(f"Threshold table for {instance} m={m} v_range={v_range} built")
    return table


def linear_v_range(instance: Instance) -> tuple[int, ...]:
    """In-gap reference counts ``l < v < u`` used by the linear decoder."""
    return tuple(range(instance.l + 1, instance.u))


def tables_for_sizes(
    instance: Instance,
    channel: GapChannel,
    sizes: Iterable[int],
    v_range: Iterable[int] | None = None,
) -> dict[int, ThresholdTable]:
    """One table per distinct group size."""
    v_range = tuple(v_range) if v_range is not None else None
    return {int(m): build_threshold_table(instance, channel, int(m), v_range) for m in sorted(set(sizes))}


@dataclass(frozen=True)
class ReferenceErrorBounds:
    promising_as_critical: float
    critical_as_promising: float
    critical_as_misleading: float
    misleading_as_critical: float

    @property
    def critical_missed(self) -> float:
        return min(1.0, self.critical_as_promising + self.critical_as_misleading)

    def to_dict(self) -> dict[str, float]:
        return {
            "promising_as_critical": self.promising_as_critical,
            "critical_as_promising": self.critical_as_promising,
            "critical_as_misleading": self.critical_as_misleading,
            "misleading_as_critical": self.misleading_as_critical,
        }


@dataclass(frozen=True)
class ItemErrorBounds:
    false_positive: float
    false_negative: float

    def to_dict(self) -> dict[str, float]:
        return {"false_positive": self.false_positive, "false_negative": self.false_negative}


def _hoeffding(I: int, t: Number, union: int) -> float:
    return min(1.0, union * math.exp(-2 * I * float(t) ** 2))


def reference_error_bounds(table: ThresholdTable, I: int, v: int | None = None, union: int = 1) -> ReferenceErrorBounds:
    """
    Chernoff-Hoeffding bounds ``exp(-2 I t^2)`` on reference-group misclassification.

    ``t`` is the distance from ``q_v`` to the nearer band edge. ``union``
    multiplies each bound (pass ``R * P`` for the union over all groups).
    """
    v = table.v_range[0] if v is None else v
    table._check(v)
    below = table.q[v] * table.eta_below[v]
    above = table.q[v] * table.eta_above[v]
    # No reference group can hold fewer than zero defectives
    below_bound = 0.0 if v == 0 else _hoeffding(I, below, union)
    above_bound = _hoeffding(I, above, union)
    return ReferenceErrorBounds(
        promising_as_critical=below_bound,
        critical_as_promising=below_bound,
        critical_as_misleading=above_bound,
        misleading_as_critical=above_bound,
    )


def item_error_bounds(table: ThresholdTable, I: int, v: int | None = None, union: int = 1) -> ItemErrorBounds:
    """Bounds on declaring a non-defective item defective and vice versa; ``union=n`` covers all items."""
    v = table.v_range[0] if v is None else v
    table._check(v)
    bound = _hoeffding(I, table.phi[(v, 0)] * table.delta[v], union)
    return ItemErrorBounds(false_positive=bound, false_negative=bound)
