"""
Deterministic random substreams.

A master seed and a trial index define a ``numpy.random.SeedSequence``; its
three spawned children drive defective-set sampling, design sampling and
outcome sampling. ``SeedSequence`` hashing and ``PCG64`` are specified
bit-for-bit, so the streams are stable across runs and platforms, and a trial
computed in a worker process matches the same trial computed serially.
"""

from dataclasses import dataclass

import numpy as np

SUBSTREAMS = ("defectives", "design", "outcomes")


@dataclass(frozen=True)
class TrialStreams:
    seed: int
    trial: int
    defectives: np.random.Generator
    design: np.random.Generator
    outcomes: np.random.Generator


def trial_seed_sequence(seed: int, trial: int) -> np.random.SeedSequence:
    if seed < 0 or trial < 0:
        raise ValueError("seed and trial index must be non-negative")
    return np.random.SeedSequence(entropy=seed, spawn_key=(trial,))


def trial_streams(seed: int, trial: int = 0) -> TrialStreams:
    """Independent generators for one trial of an experiment seeded with ``seed``."""
    children = trial_seed_sequence(seed, trial).spawn(len(SUBSTREAMS))
    generators = [np.random.Generator(np.random.PCG64(child)) for child in children]
    return TrialStreams(seed, trial, *generators)


def derived_seed(seed: int, trial: int) -> int:
    """A 64-bit integer identifying the trial's seed material, recorded in outputs."""
    return int(trial_seed_sequence(seed, trial).generate_state(1, dtype=np.uint64)[0])
