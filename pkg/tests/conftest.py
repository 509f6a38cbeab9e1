"""
Global pytest configuration file.

This file configures pytest behavior for all test runs in the project.
It automatically enables verbose mode (-v) for all pytest runs without
having to specify it on the command line.

To disable verbose mode for a specific run, use:
    pytest --no-verbose

This is useful for CI/CD pipelines or when you want less output.
"""

import sys

import numpy as np
import pytest
from loguru import logger

from model_core.channel import ChannelKind, GapChannel
from model_core.population import Instance


def pytest_addoption(parser):
    """Add command-line options to pytest."""
    parser.addoption(
        "--no-verbose",
        action="store_true",
        default=False,
        help="Disable verbose output (override default verbose mode)",
    )


def pytest_configure(config):
    """Configure pytest before test collection."""
    # If --no-verbose is not specified, add -v to the command line arguments
    if not config.getoption("--no-verbose"):
        config.option.verbose = True


@pytest.fixture(autouse=True)
def _reset_logging():
    """Keep test output quiet and undo sinks installed by CLI invocations."""
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def bernoulli():
    return GapChannel(kind=ChannelKind.BERNOULLI)


@pytest.fixture
def linear():
    return GapChannel(kind=ChannelKind.LINEAR)


@pytest.fixture
def tiny_instance():
    """n=6, d=3, l=1, u=3: the instance whose expected fractions are known by hand."""
    return Instance(n=6, d=3, l=1, u=3)


@pytest.fixture
def classical_instance():
    """Classical group testing (l=0, u=1) small enough for oversized runs."""
    return Instance(n=20, d=3, l=0, u=1)
