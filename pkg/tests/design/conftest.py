import pytest

from model_core.population import Instance
from probmath.params import Epsilons, recommend_params


@pytest.fixture
def small_params():
    """n=10, d=4, l=1: three divisions, three indicator blocks, groups of 3."""
    return recommend_params(Instance(n=10, d=4, l=1, u=2), "nona", Epsilons.uniform(0.1), R=3, I=5)


@pytest.fixture
def adaptive_params():
    return recommend_params(Instance(n=10, d=4, l=1, u=2), "ada", Epsilons.uniform(0.1), R=3, I1=4, I2=5)
