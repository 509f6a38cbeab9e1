"""
The seeded test oracle: draws threshold-test outcomes.
"""

import numpy as np

from model_core.channel import GapChannel
from model_core.population import Population, TestPool


def sample_outcome(pool: TestPool, pop: Population, channel: GapChannel, rng: np.random.Generator) -> int:
    """
    Perform one threshold test on ``pool``.

    Returns 1 with probability ``positive_prob(|pool ∩ defectives|)``, else 0.
    Exactly one uniform draw is consumed from ``rng`` per call.
    """
    k = pop.count_in(pool.members)
    p = channel.positive_prob(k, pop.l, pop.u)
    return int(rng.random() < p)


def sample_outcomes(
    counts: np.ndarray,
    channel: GapChannel,
    l: int,
    u: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Vectorised :func:`sample_outcome` over an array of pool-defective counts.

    Returns a ``uint8`` array with the same shape as ``counts``; one uniform
    draw per entry, in C order.
    """
    counts = np.asarray(counts)
    if counts.size == 0:
        return np.zeros(counts.shape, dtype=np.uint8)
    probabilities = channel.probability_vector(int(counts.max()), l, u)
    draws = rng.random(counts.shape)
    return (draws < probabilities[counts]).astype(np.uint8)
