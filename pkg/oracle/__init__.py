"""
Brute-force certification of the probability math and the decoders on tiny instances.
"""

from oracle.enumeration import (
    ORACLE_SCHEMA,
    EnumerationReport,
    check_instance,
    enumerate_phi,
    enumerate_q,
    oracle_sweep,
    partition_block_law,
    uniform_subset_law,
)
from oracle.exhaustive import ExhaustiveReport, exhaustive_decode_check

__all__ = (
    "ORACLE_SCHEMA",
    "EnumerationReport",
    "ExhaustiveReport",
    "check_instance",
    "enumerate_phi",
    "enumerate_q",
    "exhaustive_decode_check",
    "oracle_sweep",
    "partition_block_law",
    "uniform_subset_law",
)
