"""Monte Carlo estimate of ``K_n`` by direct sampling of center frequencies.

Independent of the determinant and eigenvalue routes: draws ``n`` center
frequencies from the Gaussian jitter distribution and averages the cyclic
product of pairwise pulse overlaps.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterDomainError, StatisticalPowerError
from .spectral import SpectralModel

MIN_SAMPLES = 1000
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


def _check_seed(seed):
    if int(seed) != seed or not 0 <= seed < 2**64:
        raise ParameterDomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return int(seed)


def sample_center_frequencies(model: SpectralModel, count: int, seed: int) -> np.ndarray:
    """``count`` i.i.d. draws from ``N(omega_c, sigma_f^2)``."""
    if count < 1:
        raise ParameterDomainError(f"count must be >= 1, got {count}")
    seed = _check_seed(seed)
    if model.sigma_f == 0:
        return np.full(count, float(model.omega_c))
    rng = np.random.default_rng(seed)
    return rng.normal(model.omega_c, model.sigma_f, size=count)


def _worker_sums(n, model, count, seed_seq, block_size):
    rng = np.random.default_rng(seed_seq)
    inv_scale = 1.0 / (8.0 * model.sigma_g * model.sigma_g)
    total = total_sq = 0.0
    remaining = count
    while remaining:
        m = min(block_size, remaining)
        freqs = rng.normal(model.omega_c, model.sigma_f, size=(m, n))
        s, s2 = kernels.cyclic_overlap_sums(freqs, inv_scale)
        total += s
        total_sq += s2
        remaining -= m
    return total, total_sq


def mc_kn_estimate(n: int, model: SpectralModel, samples: int, seed: int,
                   workers: int = 1, block_size: int = BLOCK_SIZE) -> McEstimate:
    """Estimate ``K_n`` from ``samples`` random frequency tuples.

    Each worker draws from its own substream spawned from ``seed``. Results
    are bit-reproducible for a fixed ``(seed, workers, block_size)``;
    changing ``workers`` changes the exact estimate, not its distribution.
    """
    if n < 2:
        raise ParameterDomainError(f"n must be >= 2, got {n}")
    if samples < MIN_SAMPLES:
        raise StatisticalPowerError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    if workers < 1:
        raise ParameterDomainError(f"workers must be >= 1, got {workers}")
    seed = _check_seed(seed)
    if model.sigma_f == 0:
        return McEstimate(mean=1.0, std_error=0.0, samples=samples, seed=seed)

    streams = np.random.SeedSequence(seed).spawn(workers)
    counts = [samples // workers + (w < samples % workers) for w in range(workers)]
    jobs = [(n, model, c, s, block_size) for c, s in zip(counts, streams) if c]
    if len(jobs) == 1:
        parts = [_worker_sums(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(lambda job: _worker_sums(*job), jobs))

    total = math.fsum(p[0] for p in parts)
    total_sq = math.fsum(p[1] for p in parts)
    mean = total / samples
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return McEstimate(mean=mean, std_error=math.sqrt(var / samples), samples=samples, seed=seed)
