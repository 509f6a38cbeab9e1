import pytest

from model_core.streams import derived_seed, trial_streams


def test_streams_are_reproducible():
    first = trial_streams(42, 3)
    second = trial_streams(42, 3)
    assert first.design.integers(1 << 30, size=5).tolist() == second.design.integers(1 << 30, size=5).tolist()
    assert first.outcomes.random() == second.outcomes.random()


def test_substreams_are_distinct():
    streams = trial_streams(42, 0)
    draws = {
        streams.defectives.integers(1 << 62),
        streams.design.integers(1 << 62),
        streams.outcomes.integers(1 << 62),
    }
    assert len(draws) == 3


def test_trials_get_distinct_streams():
    assert trial_streams(7, 0).design.random() != trial_streams(7, 1).design.random()
    assert derived_seed(7, 0) != derived_seed(7, 1)
    assert derived_seed(7, 0) == derived_seed(7, 0)


def test_negative_seed_rejected():
    with pytest.raises(ValueError):
        trial_streams(-1, 0)
