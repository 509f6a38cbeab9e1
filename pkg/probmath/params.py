"""
Closed-form design parameters and test counts.

Three algorithms share one parameter record:

* ``nona`` - non-adaptive Bernoulli design, ``T = R * P * K * I``
* ``ada``  - two-stage adaptive Bernoulli design, ``T = R * P * I1 + P * K * I2``
* ``lin``  - non-adaptive design for the linear gap channel, ``I`` scaled by ``g**2``

``K`` is the number of indicator blocks per family (``d - l`` at the default
``gamma2 = 1``).
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction

from loguru import logger

from core.exceptions import ConfigurationError, InvalidInstanceError
from model_core.population import Instance
from probmath.hypergeom import round_half_up

# 8 e^2, the per-family constant of the family-count formulas
FAMILY_CONSTANT = 8 * math.e**2
# e^6 / (4 pi^2), the constant of the reference-group count
REFERENCE_CONSTANT = math.e**6 / (4 * math.pi**2)
# Floor of the repeat count for the linear channel
MIN_LINEAR_REFERENCE_GROUPS = 3


class Algorithm(str, Enum):
    NONADAPTIVE = "nona"
    ADAPTIVE = "ada"
    LINEAR = "lin"


@dataclass(frozen=True)
class Epsilons:
    """Error budgets: no critical group (eps2), group misclassified (eps3), item misclassified (eps4)."""

    eps2: float
    eps3: float
    eps4: float

    def __post_init__(self) -> None:
        for name, value in self.to_dict().items():
            if not 0.0 < value < 1.0:
                raise ConfigurationError(f"{name} must lie in (0, 1), got {value}")

    @classmethod
    def uniform(cls, eps: float) -> "Epsilons":
        return cls(eps, eps, eps)

    @property
    def largest(self) -> float:
        return max(self.eps2, self.eps3, self.eps4)

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class DesignParams:
    instance: Instance
    algorithm: Algorithm
    epsilons: Epsilons
    gamma1: float
    gamma2: float
    P: int
    R: int
    K: int
    ref_size: int
    ind_size: int
    I: int | None = None
    I1: int | None = None
    I2: int | None = None
    probe_size: int | None = None
    overrides: tuple[str, ...] = field(default=())

    @property
    def predicted_tests(self) -> int:
        """Accounting identity for the algorithm's total test count."""
        if self.algorithm is Algorithm.ADAPTIVE:
            return self.R * self.P * self.I1 + self.P * self.K * self.I2
        return self.R * self.P * self.K * self.I

    @property
    def stage_counts(self) -> dict[str, int]:
        if self.algorithm is Algorithm.ADAPTIVE:
            return {"stage1": self.R * self.P * self.I1, "stage2": self.P * self.K * self.I2}
        return {"nonadaptive": self.predicted_tests}

    @property
    def decode_cost(self) -> int:
        """Number of outcome look-ups the decoder performs."""
        n = self.instance.n
        if self.algorithm is Algorithm.ADAPTIVE:
            return n * self.I2 + self.P * self.R * self.I1
        return self.I * (n + self.P * self.R)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "algorithm": self.algorithm.value,
            "epsilons": self.epsilons.to_dict(),
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "P": self.P,
            "R": self.R,
            "K": self.K,
            "ref_size": self.ref_size,
            "ind_size": self.ind_size,
            "I": self.I,
            "I1": self.I1,
            "I2": self.I2,
            "probe_size": self.probe_size,
            "overrides": list(self.overrides),
            "predicted_tests": self.predicted_tests,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DesignParams":
        inst = data["instance"]
        return cls(
            instance=Instance(n=inst["n"], d=inst["d"], l=inst["l"], u=inst["u"]),
            algorithm=Algorithm(data["algorithm"]),
            epsilons=Epsilons(**data["epsilons"]),
            gamma1=data["gamma1"],
            gamma2=data["gamma2"],
            P=data["P"],
            R=data["R"],
            K=data["K"],
            ref_size=data["ref_size"],
            ind_size=data["ind_size"],
            I=data.get("I"),
            I1=data.get("I1"),
            I2=data.get("I2"),
            probe_size=data.get("probe_size"),
            overrides=tuple(data.get("overrides", ())),
        )


def _division_count(instance: Instance) -> int:
    d, l = instance.d, instance.l
    return -(-2 * d // (d - l))


def bernoulli_reference_groups(instance: Instance, eps2: float) -> int:
    """Reference groups per division so that some group is critical with probability ``1 - eps2``."""
    n, d, l = instance.n, instance.d, instance.l
    if l == 0:
        return 1
    raw = (
        (math.log(1 / eps2) + math.log(2 * d / (d - l)))
        * REFERENCE_CONSTANT
        * math.sqrt(l)
        * math.sqrt((d - l) / (d + l))
        * math.sqrt((n - d) / n)
    )
    return max(1, math.ceil(raw))


def linear_reference_groups(P: int, eps2: float) -> int:
    return max(MIN_LINEAR_REFERENCE_GROUPS, math.ceil(math.log(2 * P / eps2)))


def reference_family_count(R: int, P: int, eps3: float) -> int:
    """Families needed to classify all ``R * P`` reference groups correctly with probability ``1 - eps3``."""
    return math.ceil(FAMILY_CONSTANT * (math.log(R * P) + math.log(1 / eps3)))


def item_family_count(n: int, *budgets: float) -> int:
    """Families needed to classify all ``n`` items, each budget adding ``ln(1/eps)``."""
    total = math.log(n) + sum(math.log(1 / eps) for eps in budgets)
    return math.ceil(FAMILY_CONSTANT * total)


def _positive(name: str, value: int | None) -> None:
    if value is not None and value < 1:
        raise ConfigurationError(f"{name} must be at least 1, got {value}")


def recommend_params(
    instance: Instance,
    algorithm: Algorithm | str,
    epsilons: Epsilons,
    *,
    R: int | None = None,
    I: int | None = None,
    I1: int | None = None,
    I2: int | None = None,
    gamma2: float = 1.0,
) -> DesignParams:
    """
    Recommended parameters for ``instance`` at the given error budgets.

    Explicit ``R``/``I``/``I1``/``I2`` replace the formula values; dependent
    quantities (``I`` depends on ``R``) use the replaced values.

    Raises:
        InvalidInstanceError: unless ``l < u <= d < n`` (and ``g >= 1`` for ``lin``).
        ConfigurationError: for overrides below 1, ``gamma2`` outside (0, 1],
            or an override that does not apply to the algorithm.
    """
    algorithm = Algorithm(algorithm)
    instance.require_sparse()
    if algorithm is Algorithm.LINEAR and instance.g < 1:
        raise InvalidInstanceError("g >= 1", f"linear design needs a gap: u={instance.u} must exceed l + 1 = {instance.l + 1}")
    if not 0.0 < gamma2 <= 1.0:
        raise ConfigurationError(f"gamma2 must lie in (0, 1], got {gamma2}")
    for name, value in (("R", R), ("I", I), ("I1", I1), ("I2", I2)):
        _positive(name, value)
    if algorithm is Algorithm.ADAPTIVE and I is not None:
        raise ConfigurationError("the adaptive design takes I1 and I2, not I")
    if algorithm is not Algorithm.ADAPTIVE and (I1 is not None or I2 is not None):
        raise ConfigurationError(f"I1 and I2 only apply to the adaptive design, not {algorithm.value}")

    n, d, l, u = instance.n, instance.d, instance.l, instance.u
    overrides = tuple(name for name, value in (("R", R), ("I", I), ("I1", I1), ("I2", I2)) if value is not None)
    if gamma2 != 1.0:
        overrides += ("gamma2",)

    P = _division_count(instance)
    K = max(1, round_half_up(Fraction(d - l) / Fraction(gamma2)))
    ind_size = round_half_up(Fraction(gamma2) * n / (d - l))
    bern_R = bernoulli_reference_groups(instance, epsilons.eps2)

    probe_size = None
    I_value = I1_value = I2_value = None
    match algorithm:
        case Algorithm.NONADAPTIVE:
            R_value = R if R is not None else bern_R
            ref_size = round_half_up(Fraction(n * l, d))
            I_value = I if I is not None else max(
                item_family_count(n, epsilons.eps3, epsilons.eps4),
                reference_family_count(R_value, P, epsilons.eps3),
            )
        case Algorithm.ADAPTIVE:
            R_value = R if R is not None else bern_R
            ref_size = round_half_up(Fraction(n * l, d))
            probe_size = round_half_up(Fraction(gamma2) * n / d)
            I1_value = I1 if I1 is not None else reference_family_count(R_value, P, epsilons.eps3)
            I2_value = I2 if I2 is not None else item_family_count(n, epsilons.eps4)
        case Algorithm.LINEAR:
            R_value = R if R is not None else linear_reference_groups(P, epsilons.eps2)
            ref_size = round_half_up(Fraction(n * (u + l), 2 * d))
            bern_I = max(
                item_family_count(n, epsilons.eps3, epsilons.eps4),
                reference_family_count(bern_R, P, epsilons.eps3),
            )
            I_value = I if I is not None else instance.g**2 * bern_I

    params = DesignParams(
        instance=instance,
        algorithm=algorithm,
        epsilons=epsilons,
        gamma1=(d + l) / (2 * d),
        gamma2=gamma2,
        P=P,
        R=R_value,
        K=K,
        ref_size=ref_size,
        ind_size=ind_size,
        I=I_value,
        I1=I1_value,
        I2=I2_value,
        probe_size=probe_size,
        overrides=overrides,
    )
    logger.debug(
        f"Recommended {algorithm.value} params for {instance}: P={P} R={R_value} K={K} "
        f"I={I_value} I1={I1_value} I2={I2_value} T={params.predicted_tests}"
    )
    return params


def leading_term(algorithm: Algorithm | str, instance: Instance, epsilons: Epsilons) -> float:
    """
    Asymptotic test-count form for comparison with the exact count.

    ``(4 e^8 ln 2 / pi^2) ln(1/eps) sqrt(l) d ln n`` for ``nona``,
    ``16 e^2 d ln n`` for ``ada`` and ``g^2 d ln n`` for ``lin``, with
    ``eps`` the largest budget.
    """
    algorithm = Algorithm(algorithm)
    n, d, l = instance.n, instance.d, instance.l
    base = d * math.log(n)
    match algorithm:
        case Algorithm.NONADAPTIVE:
            constant = 4 * math.e**8 * math.log(2) / math.pi**2
            return constant * math.log(1 / epsilons.largest) * math.sqrt(l) * base
        case Algorithm.ADAPTIVE:
            return 16 * math.e**2 * base
        case Algorithm.LINEAR:
            return instance.g**2 * base
