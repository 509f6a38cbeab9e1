"""
Problem instance, stochastic threshold channel, random streams and the test oracle.
"""

from model_core.channel import ChannelKind, GapChannel, channel_positive_prob
from model_core.outcomes import sample_outcome, sample_outcomes
from model_core.population import Instance, Population, TestPool, sample_population
from model_core.streams import TrialStreams, trial_streams

__all__ = (
    "ChannelKind",
    "GapChannel",
    "Instance",
    "Population",
    "TestPool",
    "TrialStreams",
    "channel_positive_prob",
    "sample_outcome",
    "sample_outcomes",
    "sample_population",
    "trial_streams",
)
