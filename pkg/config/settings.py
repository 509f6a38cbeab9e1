"""
Runtime settings.

Every value has a default, so no environment variable is required. Values are
read once at import time through django-environ, after the optional
``.env.<environment>`` file has been loaded by :mod:`config.env`.
"""

from pathlib import Path

from config.env import BASE_DIR, env

OUTPUT_DIR: Path = Path(env.str("STGT_OUTPUT_DIR", default="results"))

LOG_LEVEL: str = env.str("STGT_LOG_LEVEL", default="INFO").upper()
# Empty string disables the file sink
LOG_FILE: str = env.str("STGT_LOG_FILE", default=str(BASE_DIR / "logs" / "stgt.log"))

WORKERS: int = env.int("STGT_WORKERS", default=1)

DEFAULT_EPSILON: float = env.float("STGT_DEFAULT_EPSILON", default=0.1)

# Enumeration budgets for the brute-force oracle
ORACLE_MAX_N: int = env.int("STGT_ORACLE_MAX_N", default=14)
EXHAUSTIVE_MAX_N: int = env.int("STGT_EXHAUSTIVE_MAX_N", default=30)

# Absolute tolerance used by every library-vs-oracle comparison
ORACLE_TOLERANCE: float = 1e-12
