"""Photon-number statistics of N partially indistinguishable emitters.

The finite-N distribution is ``P_n ~ C(N, n) B_n c^n`` for ``n = 0..N``; it is
computed entirely in log space and is well defined for any ``Nc``. The
Bose-Einstein and modified Bose-Einstein forms are its large-N, ``Nc*S < 1``
limits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import kernels
from .combinatorics import BunchingTable, bunching_series
from .errors import (
    DivergentRegimeError,
    ParameterDomainError,
    ScanRangeError,
    UndefinedCoherenceError,
)
from .spectral import bunching_factor_S

DEFAULT_NC_RANGE = (1e-4, 1e4)
DEFAULT_POINTS_PER_DECADE = 200


@dataclass(frozen=True)
class EnsembleParams:
    """``N`` identical emitters, per-emitter weight ``c``, pairwise indistinguishability ``K``."""

    N: int
    c: float
    K: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ParameterDomainError(f"N must be a positive integer, got {self.N}")
        if not (math.isfinite(self.c) and self.c > 0):
            raise ParameterDomainError(f"c must be positive, got {self.c}")
        if not (math.isfinite(self.K) and 0 <= self.K <= 1):
            raise ParameterDomainError(f"K must lie in [0, 1], got {self.K}")

    @classmethod
    def from_Nc(cls, N: int, Nc: float, K: float) -> "EnsembleParams":
        return cls(N=N, c=Nc / N, K=K)

    @property
    def Nc(self) -> float:
        return self.N * self.c


@dataclass(frozen=True)
class PhotonNumberDistribution:
    """Normalized ``P_0..P_N``, stored as log probabilities."""

    N: int
    log_probabilities: np.ndarray = field(repr=False)

    @property
    def probabilities(self) -> np.ndarray:
        return np.exp(self.log_probabilities)

    def __len__(self):
        return self.log_probabilities.size


@dataclass(frozen=True)
class ThermalPoint:
    """Pair ``(epsilon / k_B T, Nc)`` related by ``Nc = exp(-epsilon / k_B T)``.

    Either field may be left as ``None``; :func:`thermal_mapping` fills it in.
    """

    epsilon_over_kT: float | None = None
    Nc: float | None = None


@dataclass(frozen=True)
class TransitionResult:
    K: float
    N: int
    Nc_star: float
    one_over_S: float

    @property
    def ratio(self) -> float:
        """``Nc_star * S``; 1 when the crossing sits exactly at ``1/S``."""
        return self.Nc_star / self.one_over_S


def log_base_weights(table: BunchingTable, N: int) -> np.ndarray:
    """``ln[C(N, n) B_n]`` for ``n = 0..N``; the ``c^n`` factor is applied separately."""
    if table.n_max < N:
        raise ParameterDomainError(f"bunching table covers n <= {table.n_max}, need {N}")
    n = np.arange(N + 1)
    log_binom = gammaln(N + 1.0) - gammaln(n + 1.0) - gammaln(N - n + 1.0)
    return log_binom + table.log_B[: N + 1]


def ensemble_distribution(params: EnsembleParams, table: BunchingTable | None = None) -> PhotonNumberDistribution:
    """Photon-number distribution ``P_n ~ C(N, n) B_n c^n``."""
    if table is None:
        table = bunching_series(params.K, params.N)
    lw = log_base_weights(table, params.N) + np.arange(params.N + 1) * math.log(params.c)
    log_norm, _, _ = kernels.log_weight_moments(lw)
    logp = lw - log_norm
    logp.setflags(write=False)
    return PhotonNumberDistribution(N=params.N, log_probabilities=logp)


def mean_photon_number(dist: PhotonNumberDistribution) -> float:
    """``sum_n n P_n``."""
    return float(np.dot(np.arange(len(dist)), dist.probabilities))


def second_order_coherence(dist: PhotonNumberDistribution) -> float:
    """``g2(0) = <n(n-1)> / <n>^2``."""
    p = dist.probabilities
    n = np.arange(len(dist), dtype=np.float64)
    mean = float(np.dot(n, p))
    if mean <= 0:
        raise UndefinedCoherenceError("g2(0) is undefined for zero mean photon number")
    return float(np.dot(n * (n - 1.0), p)) / (mean * mean)


def bose_einstein(nbar: float, n: int) -> float:
    """Thermal photon-number probability ``nbar^n / (1 + nbar)^(n+1)``."""
    if not nbar > 0:
        raise ParameterDomainError(f"nbar must be positive, got {nbar}")
    if n < 0:
        raise ParameterDomainError(f"n must be non-negative, got {n}")
    q = nbar / (1.0 + nbar)
    return q**n / (1.0 + nbar)


def modified_bose_einstein(Nc: float, S: float, n: int) -> float:
    """Geometric distribution ``(1 - Nc S) (Nc S)^n``; requires ``Nc S < 1``."""
    if not Nc > 0:
        raise ParameterDomainError(f"Nc must be positive, got {Nc}")
    if not 0 < S <= 1:
        raise ParameterDomainError(f"S must lie in (0, 1], got {S}")
    if n < 0:
        raise ParameterDomainError(f"n must be non-negative, got {n}")
    q = Nc * S
    if q >= 1:
        raise DivergentRegimeError(
            f"Nc*S = {q:g} >= 1: geometric form diverges, use ensemble_distribution"
        )
    return (1.0 - q) * q**n


def modified_bose_einstein_mean(Nc: float, S: float) -> float:
    q = Nc * S
    if q >= 1:
        raise DivergentRegimeError(f"Nc*S = {q:g} >= 1: mean diverges")
    return q / (1.0 - q)


def thermal_mapping(point: ThermalPoint) -> ThermalPoint:
    """Complete the ``(epsilon / k_B T, Nc)`` pair."""
    if point.Nc is not None:
        if not point.Nc > 0:
            raise ParameterDomainError(f"Nc must be positive, got {point.Nc}")
        return ThermalPoint(epsilon_over_kT=-math.log(point.Nc), Nc=point.Nc)
    if point.epsilon_over_kT is None:
        raise ParameterDomainError("thermal point needs Nc or epsilon_over_kT")
    return ThermalPoint(epsilon_over_kT=point.epsilon_over_kT, Nc=math.exp(-point.epsilon_over_kT))


def nc_grid(nc_min: float = DEFAULT_NC_RANGE[0], nc_max: float = DEFAULT_NC_RANGE[1],
            points_per_decade: int = DEFAULT_POINTS_PER_DECADE) -> np.ndarray:
    """Logarithmic ``Nc`` grid with ``points_per_decade`` intervals per decade, ends included."""
    if not 0 < nc_min < nc_max:
        raise ParameterDomainError(f"need 0 < nc_min < nc_max, got {nc_min}, {nc_max}")
    if points_per_decade < 1:
        raise ParameterDomainError("points_per_decade must be >= 1")
    decades = math.log10(nc_max / nc_min)
    count = max(int(round(decades * points_per_decade)), 1) + 1
    return np.logspace(math.log10(nc_min), math.log10(nc_max), count)


def coherence_scan(K: float, N: int, Nc, table: BunchingTable | None = None):
    """``(g2, nbar)`` arrays over the ``Nc`` values, reusing one bunching table."""
    if table is None:
        table = bunching_series(K, N)
    Nc = np.atleast_1d(np.asarray(Nc, dtype=np.float64))
    if np.any(Nc <= 0):
        raise ParameterDomainError("Nc values must be positive")
    base = log_base_weights(table, N)
    mean, fact2 = kernels.scan_moments(base, np.log(Nc / N))
    return fact2 / (mean * mean), mean


def transition_point(K: float, N: int, nc_min: float = DEFAULT_NC_RANGE[0],
                     nc_max: float = DEFAULT_NC_RANGE[1],
                     points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
                     rtol: float = 1e-3,
                     table: BunchingTable | None = None) -> TransitionResult:
    """Locate where g2(0) first drops below the midpoint ``1 + K/2``.

    Scans a logarithmic ``Nc`` grid and refines the bracketing interval by
    bisection in ``ln Nc`` to relative accuracy ``rtol``.
    """
    if not (math.isfinite(K) and 0 < K <= 1):
        raise ParameterDomainError(f"K must lie in (0, 1], got {K}")
    if N < 1:
        raise ParameterDomainError(f"N must be positive, got {N}")
    if table is None:
        table = bunching_series(K, N)
    target = 1.0 + 0.5 * K
    grid = nc_grid(nc_min, nc_max, points_per_decade)
    g2, _ = coherence_scan(K, N, grid, table)
    below = np.flatnonzero(g2 < target)
    if below.size == 0 or below[0] == 0:
        raise ScanRangeError(
            f"no g2 midpoint crossing for K={K} in Nc range [{nc_min:g}, {nc_max:g}]"
        )
    lo, hi = math.log(grid[below[0] - 1]), math.log(grid[below[0]])
    while hi - lo > rtol:
        mid = 0.5 * (lo + hi)
        g, _ = coherence_scan(K, N, [math.exp(mid)], table)
        if g[0] < target:
            hi = mid
        else:
            lo = mid
    S = bunching_factor_S(K)
    return TransitionResult(K=K, N=N, Nc_star=math.exp(0.5 * (lo + hi)), one_over_S=1.0 / S)
