"""Permutation counting and the bunching coefficient ``B_n``.

``B_n = 1 + sum_{k=2}^{n} D(n, n-k) K_k`` where ``D(n, m)`` counts
permutations of ``n`` items with exactly ``m`` fixed points. Up to
:data:`EXACT_LIMIT` the sum is carried out in exact rational arithmetic;
beyond that (factorials overflow doubles near n = 170) it is evaluated in
log space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import kernels
from .errors import CoverageError, ParameterDomainError
from .spectral import KSeries, kn_series

EXACT_LIMIT = 20


@dataclass(frozen=True, order=True)
class LogNumber:
    """Non-negative number stored as its natural log (``-inf`` is zero)."""

    log_value: float

    @classmethod
    def from_value(cls, x) -> "LogNumber":
        if x < 0:
            raise ParameterDomainError(f"LogNumber holds non-negative values only, got {x}")
        return cls(math.log(x) if x > 0 else -math.inf)

    def __add__(self, other: "LogNumber") -> "LogNumber":
        return LogNumber(float(np.logaddexp(self.log_value, other.log_value)))

    def __mul__(self, other: "LogNumber") -> "LogNumber":
        return LogNumber(self.log_value + other.log_value)

    def __float__(self) -> float:
        return math.exp(self.log_value)

    @staticmethod
    def sum(items) -> "LogNumber":
        """Max-shifted log-sum-exp of many terms."""
        logs = np.array([x.log_value for x in items], dtype=np.float64)
        if logs.size == 0:
            return LogNumber(-math.inf)
        top = logs.max()
        if top == -math.inf:
            return LogNumber(-math.inf)
        return LogNumber(float(top + math.log(math.fsum(np.exp(logs - top)))))


@lru_cache(maxsize=8)
def _derangements(n_max: int) -> tuple:
    d = [1, 0]
    for k in range(2, n_max + 1):
        d.append((k - 1) * (d[-1] + d[-2]))
    return tuple(d[: n_max + 1])


def derangement_count(k: int) -> int:
    """Number of permutations of ``k`` items without a fixed point (``!k``)."""
    if k < 0:
        raise ParameterDomainError(f"k must be non-negative, got {k}")
    return _derangements(max(k, 1))[k]


def rencontres_number(n: int, fixed: int) -> int:
    """Permutations of ``n`` items with exactly ``fixed`` fixed points."""
    if n < 0 or not 0 <= fixed <= n:
        raise ParameterDomainError(f"need 0 <= fixed <= n, got n={n}, fixed={fixed}")
    return math.comb(n, fixed) * derangement_count(n - fixed)


def log_derangements(n_max: int) -> np.ndarray:
    """``ln !k`` for ``k = 0..n_max`` (``-inf`` at ``k = 1``)."""
    d = _derangements(max(n_max, 1))
    return np.array([math.log(x) if x else -math.inf for x in d[: n_max + 1]])


def _check_coverage(n, kseries):
    if n < 0:
        raise ParameterDomainError(f"n must be non-negative, got {n}")
    if n >= 2 and kseries.n_max < n:
        raise CoverageError(f"K series covers orders up to {kseries.n_max}, need {n}")


def bunching_coefficient_exact(n: int, kseries: KSeries) -> Fraction:
    """``B_n`` as an exact rational in the (binary-exact) ``K_k`` values."""
    _check_coverage(n, kseries)
    total = Fraction(1)
    for k in range(2, n + 1):
        total += rencontres_number(n, n - k) * Fraction(kseries[k])
    return total


def bunching_coefficient_log(n: int, kseries: KSeries) -> LogNumber:
    """``B_n`` evaluated in log space; valid for any ``n``."""
    _check_coverage(n, kseries)
    if n < 2:
        return LogNumber(0.0)
    log_kn = kseries.log_values()[: n + 1]
    log_B = kernels.log_bunching_table(log_kn, log_derangements(n), gammaln(np.arange(n + 1) + 1.0))
    return LogNumber(float(log_B[n]))


def bunching_coefficient(n: int, kseries: KSeries, exact: bool | None = None):
    """``B_n = 1 + sum_{k=2}^n D(n, n-k) K_k``.

    Returns a :class:`~fractions.Fraction` when ``exact`` (default for
    ``n <= EXACT_LIMIT``), otherwise a :class:`LogNumber`.
    """
    if exact is None:
        exact = n <= EXACT_LIMIT
    if exact:
        return bunching_coefficient_exact(n, kseries)
    return bunching_coefficient_log(n, kseries)


@dataclass(frozen=True)
class BunchingTable:
    """``B_0..B_{n_max}`` for one ``K``.

    ``log_B[n]`` is ``ln B_n``; ``exact_B`` holds exact rationals for
    ``n <= min(n_max, EXACT_LIMIT)``.
    """

    K: float
    log_B: np.ndarray = field(repr=False)
    exact_B: tuple = field(default=(), repr=False)

    @property
    def n_max(self) -> int:
        return int(self.log_B.size - 1)

    def __getitem__(self, n: int) -> LogNumber:
        return LogNumber(float(self.log_B[n]))

    def log_B_over_factorial(self) -> np.ndarray:
        """``ln(B_n / n!)``."""
        return self.log_B - gammaln(np.arange(self.n_max + 1) + 1.0)


@lru_cache(maxsize=64)
def _log_bunching_cached(K: float, n_max: int) -> np.ndarray:
    ks = kn_series(K, max(n_max, 2))
    log_kn = ks.log_values()[: n_max + 1]
    out = kernels.log_bunching_table(
        log_kn, log_derangements(n_max), gammaln(np.arange(n_max + 1) + 1.0)
    )
    out = np.asarray(out, dtype=np.float64)
    out.setflags(write=False)
    return out


def bunching_series(K: float, n_max: int, exact_limit: int = EXACT_LIMIT) -> BunchingTable:
    """Full table ``B_0..B_{n_max}``; ``O(n_max^2)`` work, memoized per ``(K, n_max)``."""
    if n_max < 1:
        raise ParameterDomainError(f"n_max must be >= 1, got {n_max}")
    K = float(K)
    log_B = _log_bunching_cached(K, int(n_max))
    m = min(n_max, exact_limit)
    if m >= 2:
        ks = kn_series(K, m)
        exact = tuple(bunching_coefficient_exact(n, ks) for n in range(m + 1))
    else:
        exact = tuple(Fraction(1) for _ in range(m + 1))
    return BunchingTable(K=K, log_B=log_B, exact_B=exact)
