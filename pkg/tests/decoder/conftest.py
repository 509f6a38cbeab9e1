import pytest

from model_core.population import Instance, Population
from probmath.params import Epsilons, recommend_params


@pytest.fixture
def instance():
    """n=24, d=4, l=1, u=3: three divisions of 8, groups of 6, three blocks."""
    return Instance(n=24, d=4, l=1, u=3)


@pytest.fixture
def population(instance):
    return Population.from_items(instance, [0, 5, 10, 15])


@pytest.fixture
def nona_params(instance):
    return recommend_params(instance, "nona", Epsilons.uniform(0.1), R=3, I=5)


@pytest.fixture
def ada_params(instance):
    return recommend_params(instance, "ada", Epsilons.uniform(0.1), R=3, I1=4, I2=5)
