"""
Random balanced partitions and group sampling.

A balanced partition shuffles the universe with the seeded stream and slices
it contiguously; the first ``n % parts`` blocks get one extra item, exactly as
``numpy.array_split`` distributes a remainder.
"""

import numpy as np

from core.exceptions import InvalidParameterError
from probmath.params import DesignParams


def balanced_sizes(n: int, parts: int) -> np.ndarray:
    """Block sizes of a balanced partition of ``n`` items into ``parts`` blocks."""
    if parts < 1:
        raise InvalidParameterError(f"number of blocks must be positive, got {parts}")
    base, extra = divmod(n, parts)
    return np.array([base + 1] * extra + [base] * (parts - extra), dtype=np.int64)


def label_dtype(parts: int) -> np.dtype:
    """Smallest unsigned integer type holding block labels ``0..parts-1``."""
    return np.min_scalar_type(max(parts - 1, 0))


def random_partition(n: int, parts: int, rng: np.random.Generator) -> list[np.ndarray]:
    """A uniformly random balanced partition; each block is returned sorted."""
    permutation = rng.permutation(n)
    return [np.sort(block) for block in np.array_split(permutation, parts)]


def build_divisions(n: int, params: DesignParams, rng: np.random.Generator) -> tuple[np.ndarray, ...]:
    """Split the universe into ``P`` disjoint divisions whose sizes differ by at most one."""
    if params.P < 2:
        raise InvalidParameterError(f"need at least two divisions, got P={params.P}")
    return tuple(random_partition(n, params.P, rng))


def division_index(n: int, divisions: tuple[np.ndarray, ...]) -> np.ndarray:
    """``division_of[j]`` is the index of the division holding item ``j``."""
    division_of = np.full(n, -1, dtype=np.int64)
    for rho, members in enumerate(divisions):
        division_of[members] = rho
    return division_of


def sample_reference_groups(
    divisions: tuple[np.ndarray, ...],
    params: DesignParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Draw ``R`` reference groups per division from the division's complement.

    Returns:
        Array of shape ``(P, R, ref_size)``; every group is sorted.

    Raises:
        InvalidParameterError: if ``ref_size`` exceeds a complement.
    """
    n = params.instance.n
    groups = np.zeros((len(divisions), params.R, params.ref_size), dtype=np.int64)
    universe = np.arange(n)
    for rho, members in enumerate(divisions):
        complement = np.setdiff1d(universe, members, assume_unique=True)
        if params.ref_size > len(complement):
            raise InvalidParameterError(
                f"reference group size {params.ref_size} exceeds the complement of division {rho} ({len(complement)} items)"
            )
        for r in range(params.R):
            groups[rho, r] = np.sort(rng.choice(complement, size=params.ref_size, replace=False))
    return groups


def sample_indicator_families(
    n: int,
    params: DesignParams,
    I: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Draw ``I`` independent balanced partitions into ``K`` blocks and one probe block per family.

    Returns:
        ``(labels, probe_picks)``: ``labels[i, j]`` is the block holding item
        ``j`` in family ``i``; ``probe_picks[i]`` is the probe block of family ``i``.
        Block ``k`` has ``balanced_sizes(n, K)[k]`` items in every family.
    """
    K = params.K
    if K < 1:
        raise InvalidParameterError(f"need at least one indicator block, got K={K}")
    block_of_position = np.repeat(np.arange(K), balanced_sizes(n, K)).astype(label_dtype(K))
    labels = np.empty((I, n), dtype=label_dtype(K))
    for i in range(I):
        labels[i, rng.permutation(n)] = block_of_position
    probe_picks = rng.integers(0, K, size=I)
    return labels, probe_picks


def sample_probe_groups(n: int, size: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform ``size``-subsets of the universe, each sorted."""
    if not 0 < size <= n:
        raise InvalidParameterError(f"probe group size {size} outside 1..{n}")
    groups = np.empty((count, size), dtype=np.int64)
    for i in range(count):
        groups[i] = np.sort(rng.choice(n, size=size, replace=False))
    return groups
