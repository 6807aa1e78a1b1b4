"""Numpy implementations of the hot kernels.

Same signatures and semantics as the compiled ``_core`` module; used when the
extension is not built or when ``PHOTONSTAT_BACKEND=python`` is set.
"""
import numpy as np


def log_bunching_table(log_kn, log_der, log_fact):
    """Return ``log B_n`` for ``n = 0..n_max``.

    ``B_n = 1 + sum_{k=2}^{n} C(n, k) * !k * K_k`` with every input given as a
    natural log indexed by order (``-inf`` encodes zero).
    """
    log_kn = np.asarray(log_kn, dtype=np.float64)
    log_der = np.asarray(log_der, dtype=np.float64)
    log_fact = np.asarray(log_fact, dtype=np.float64)
    n_max = log_kn.shape[0] - 1
    out = np.zeros(n_max + 1)
    inner = log_der + log_kn - log_fact
    for n in range(2, n_max + 1):
        k = np.arange(2, n + 1)
        terms = log_fact[n] - log_fact[n - k] + inner[k]
        top = max(terms.max(), 0.0)
        out[n] = top + np.log(np.exp(-top) + np.exp(terms - top).sum())
    return out


def cyclic_overlap_sums(freqs, inv_scale):
    """Sum and sum of squares of cyclic overlap products over sample rows.

    Each row ``w`` of ``freqs`` contributes
    ``exp(-inv_scale * sum_i (w_i - w_{i+1 mod n})**2)``.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    diff = freqs - np.roll(freqs, -1, axis=1)
    prod = np.exp(-inv_scale * np.einsum("ij,ij->i", diff, diff))
    return float(prod.sum()), float(np.dot(prod, prod))


def log_weight_moments(log_weights):
    """Normalize log weights; return ``(log_norm, mean, factorial_second_moment)``."""
    lw = np.asarray(log_weights, dtype=np.float64)
    top = lw.max()
    p = np.exp(lw - top)
    z = p.sum()
    n = np.arange(lw.shape[0], dtype=np.float64)
    mean = np.dot(n, p) / z
    fact2 = np.dot(n * (n - 1.0), p) / z
    return top + np.log(z), float(mean), float(fact2)


def scan_moments(log_base, log_c):
    """Moments of ``P_n ~ exp(log_base[n] + n*log_c[j])`` for every grid point ``j``."""
    log_base = np.asarray(log_base, dtype=np.float64)
    log_c = np.atleast_1d(np.asarray(log_c, dtype=np.float64))
    means = np.empty(log_c.shape[0])
    fact2 = np.empty(log_c.shape[0])
    n = np.arange(log_base.shape[0], dtype=np.float64)
    for j, lc in enumerate(log_c):
        _, means[j], fact2[j] = log_weight_moments(log_base + n * lc)
    return means, fact2
