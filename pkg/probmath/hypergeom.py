"""
Hypergeometric probabilities and the critical-hit bound for reference groups.

Float results come from ``scipy.stats.hypergeom`` (log-space, safe for n up to
10**6); ``exact=True`` switches to rational arithmetic on exact binomial
coefficients, which the oracle and the small-instance tests rely on.
"""

import math
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy import stats

from core.exceptions import InvalidParameterError

# 4 pi^2 / e^5, the constant of the Stirling-based lower bound
CRITICAL_HIT_CONSTANT = 4 * math.pi**2 / math.e**5


def round_half_up(x: Rational | int | float) -> int:
    """Round to the nearest integer, halves away from zero for non-negative input."""
    return math.floor(Fraction(x) + Fraction(1, 2))


def _check_population(s: int, n: int, d: int) -> None:
    if n < 0 or not 0 <= d <= n or not 0 <= s <= n:
        raise InvalidParameterError(f"hypergeometric parameters out of range: s={s}, n={n}, d={d}")


def support(s: int, n: int, d: int) -> range:
    """Success counts with non-zero probability when drawing ``s`` of ``n`` items, ``d`` of them marked."""
    _check_population(s, n, d)
    return range(max(0, s - (n - d)), min(s, d) + 1)


def hypergeom_pmf(v: int, s: int, n: int, d: int, *, exact: bool = False) -> float | Fraction:
    """
    Probability of exactly ``v`` marked items in a uniform ``s``-subset of ``n`` items with ``d`` marked.

    Returns ``C(d, v) * C(n - d, s - v) / C(n, s)``; values of ``v`` outside the
    support give 0.

    Raises:
        InvalidParameterError: if ``s`` or ``d`` is not within ``0..n``.
    """
    _check_population(s, n, d)
    if v not in support(s, n, d):
        return Fraction(0) if exact else 0.0
    if exact:
        return Fraction(math.comb(d, v) * math.comb(n - d, s - v), math.comb(n, s))
    if d in (0, n) or s in (0, n):
        # single-point support
        return 1.0
    return float(stats.hypergeom.pmf(v, n, d, s))


def hypergeom_vector(s: int, n: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """The support of the law and the matching probabilities, as arrays."""
    span = support(s, n, d)
    values = np.arange(span.start, span.stop)
    if d in (0, n) or s in (0, n):
        return values, np.ones(len(values))
    return values, stats.hypergeom.pmf(values, n, d, s)


def critical_hit_lower_bound(n: int, d: int, l: int) -> float:
    """
    Analytic lower bound on the chance that a reference group of ``n*l/d`` items holds exactly ``l`` defectives.

    ``(4 pi^2 / e^5) * (1 / sqrt(l)) * sqrt(d / (d - l)) * sqrt(n / (n - d))``.
    An empty reference group (``l = 0``) is always critical, so the bound is 1.
    """
    if l == 0:
        return 1.0
    if not 1 <= l < d < n:
        raise InvalidParameterError(f"critical-hit bound needs 1 <= l < d < n, got n={n}, d={d}, l={l}")
    return CRITICAL_HIT_CONSTANT / math.sqrt(l) * math.sqrt(d / (d - l)) * math.sqrt(n / (n - d))


def critical_hit_probability(n: int, d: int, l: int, *, exact: bool = False) -> float | Fraction:
    """Exact probability that a uniform group of ``round(n*l/d)`` items holds exactly ``l`` defectives."""
    size = round_half_up(Fraction(n * l, d))
    return hypergeom_pmf(l, size, n, d, exact=exact)
