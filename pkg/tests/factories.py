import factory

from harness.config import ExperimentConfig
from model_core.population import Instance


class InstanceFactory(factory.Factory):
    class Meta:
        model = Instance

    n = 60
    d = 6
    l = 1
    u = 3


class ExperimentConfigFactory(factory.Factory):
    """Small, fast experiment; tests pass ``output`` explicitly."""

    class Meta:
        model = ExperimentConfig

    n = 40
    d = 4
    l = 1
    u = 3
    model = "bernoulli"
    algorithm = "nona"
    R = 4
    I = 60
    trials = 3
    seed = factory.Faker("pyint", min_value=0, max_value=2**32)
    workers = 1
