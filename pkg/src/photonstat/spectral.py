"""Multi-photon indistinguishability for Gaussian spectra.

Three independent routes evaluate ``K_n = tr(rho^n)``:

* :func:`kn_determinant` -- the n-dimensional Gaussian integral, i.e. the
  determinant of the cyclic tridiagonal quadratic-form matrix;
* :func:`kn_closed_form` -- the eigenvalue product of that circulant matrix;
* :func:`kn_table` -- rational closed forms for ``n <= 6``.

All three agree to round-off. The decay rate of ``K_n`` with ``n`` is the
per-photon bunching factor ``S = exp(-alpha)``, obtained either by fitting
(:func:`fit_alpha`) or from its large-n limit (:func:`bunching_factor_S`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    FitWindowError,
    InvariantViolation,
    ParameterDomainError,
    RouteUnavailableError,
    UnsupportedOrderError,
)

DEFAULT_FIT_WINDOW = (50, 200)


@dataclass(frozen=True)
class SpectralModel:
    """Gaussian single-photon spectrum.

    Attributes
    ----------
    sigma_g : float
        Spectral width of the transform-limited pulse.
    sigma_f : float
        Width of the center-frequency distribution (shot-to-shot jitter).
    omega_c : float
        Mean center frequency; no derived quantity depends on it.
    """

    sigma_g: float
    sigma_f: float
    omega_c: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma_g) and self.sigma_g > 0):
            raise ParameterDomainError(f"sigma_g must be positive, got {self.sigma_g}")
        if not (math.isfinite(self.sigma_f) and self.sigma_f >= 0):
            raise ParameterDomainError(f"sigma_f must be non-negative, got {self.sigma_f}")
        if not math.isfinite(self.omega_c):
            raise ParameterDomainError(f"omega_c must be finite, got {self.omega_c}")

    @classmethod
    def from_indistinguishability(cls, K: float, sigma_g: float = 1.0, omega_c: float = 0.0):
        """Model whose pairwise indistinguishability equals ``K``."""
        _check_K(K)
        sigma_f = sigma_g * math.sqrt(1.0 - K * K) / K
        return cls(sigma_g=sigma_g, sigma_f=sigma_f, omega_c=omega_c)


@dataclass(frozen=True)
class KSeries:
    """Tabulated ``K_1..K_{n_max}`` for one pairwise indistinguishability ``K``.

    ``values[0]`` is ``K_1`` (always 1) so ``K_n == values[n - 1]``.
    ``K = 0`` is accepted as the fully distinguishable limit
    (``K_n = 0`` for ``n >= 2``).
    """

    K: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 1:
            raise ParameterDomainError("KSeries needs at least K_1")
        if values[0] != 1.0:
            raise ParameterDomainError("K_1 must be exactly 1")

    @property
    def n_max(self) -> int:
        return int(self.values.size)

    def __getitem__(self, n: int) -> float:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"order {n} outside 1..{self.n_max}")
        return float(self.values[n - 1])

    def log_values(self) -> np.ndarray:
        """``ln K_n`` indexed from 0 (``index 0 -> -inf`` placeholder for order 0)."""
        with np.errstate(divide="ignore"):
            return np.concatenate(([-np.inf], np.log(self.values)))


@dataclass(frozen=True)
class FitResult:
    alpha: float
    S: float
    n_min: int
    n_max: int
    residual: float


def _check_K(K, allow_zero=False):
    lo_ok = K >= 0 if allow_zero else K > 0
    if not (math.isfinite(K) and lo_ok and K <= 1):
        interval = "[0, 1]" if allow_zero else "(0, 1]"
        raise ParameterDomainError(f"K must lie in {interval}, got {K}")


def pairwise_indistinguishability(model: SpectralModel) -> float:
    """``K = sigma_g / sqrt(sigma_g**2 + sigma_f**2)``."""
    return model.sigma_g / math.hypot(model.sigma_g, model.sigma_f)


def single_photon_overlap(omega_i: float, omega_j: float, sigma_g: float) -> float:
    """Overlap of two transform-limited Gaussian pulses centred at ``omega_i``, ``omega_j``."""
    if not sigma_g > 0:
        raise ParameterDomainError(f"sigma_g must be positive, got {sigma_g}")
    d = omega_i - omega_j
    return math.exp(-d * d / (8.0 * sigma_g * sigma_g))


def quadratic_form_matrix(n: int, model: SpectralModel) -> np.ndarray:
    """Matrix ``A`` of the exponent ``-x^T A x / 2`` in the n-photon overlap integral.

    Diagonal ``1/sigma_f^2 + 1/(2 sigma_g^2)``; cyclic neighbours
    ``-1/(4 sigma_g^2)``. At ``n = 2`` both couplings land on the same entry.
    """
    if n < 2:
        raise ParameterDomainError(f"n must be >= 2, got {n}")
    if model.sigma_f == 0:
        raise RouteUnavailableError("quadratic form is singular for sigma_f = 0")
    inv_g2 = 1.0 / (model.sigma_g * model.sigma_g)
    diag = 1.0 / (model.sigma_f * model.sigma_f) + 0.5 * inv_g2
    off = -0.25 * inv_g2
    A = np.zeros((n, n))
    idx = np.arange(n)
    A[idx, idx] = diag
    A[idx, (idx + 1) % n] += off
    A[(idx + 1) % n, idx] += off
    return A


def _log_det_cyclic_tridiagonal(diag: float, off: float, n: int) -> float:
    """``ln det`` of the n x n cyclic tridiagonal matrix with constant entries, n >= 3.

    Transfer-matrix identity ``det = tr(T^n) + 2 (-1)^(n+1) off^n`` with
    ``T = [[diag, -off^2], [1, 0]]``. The power is accumulated with
    per-step rescaling so that large n stays finite.
    """
    T = np.array([[diag, -off * off], [1.0, 0.0]])
    P = np.eye(2)
    log_scale = 0.0
    for _ in range(n):
        P = P @ T
        s = np.abs(P).max()
        P /= s
        log_scale += math.log(s)
    sign = (-1.0) ** (n + 1) * math.copysign(1.0, off) ** n
    corner = sign * math.exp(math.log(2.0) + n * math.log(abs(off)) - log_scale)
    det_scaled = float(np.trace(P)) + corner
    if not det_scaled > 0:
        raise InvariantViolation("quadratic-form matrix is not positive definite")
    return math.log(det_scaled) + log_scale


def log_kn_determinant(n: int, model: SpectralModel) -> float:
    """``ln K_n`` from the Gaussian-integral determinant."""
    if n < 2:
        raise ParameterDomainError(f"n must be >= 2, got {n}")
    if model.sigma_f == 0:
        raise RouteUnavailableError(
            "determinant route is singular for sigma_f = 0; use kn_closed_form (K_n = 1)"
        )
    inv_g2 = 1.0 / (model.sigma_g * model.sigma_g)
    diag = 1.0 / (model.sigma_f * model.sigma_f) + 0.5 * inv_g2
    off = -0.25 * inv_g2
    if n == 2:
        coupling = 2.0 * off
        det = diag * diag - coupling * coupling
        if not det > 0:
            raise InvariantViolation("quadratic-form matrix is not positive definite")
        log_det = math.log(det)
    else:
        log_det = _log_det_cyclic_tridiagonal(diag, off, n)
    return -n * math.log(model.sigma_f) - 0.5 * log_det


def kn_determinant(n: int, model: SpectralModel) -> float:
    """``K_n = (sigma_f^2)^(-n/2) det(A)^(-1/2)``, see :func:`quadratic_form_matrix`."""
    return math.exp(log_kn_determinant(n, model))


def log_kn_closed_form(n: int, K: float) -> float:
    """``ln K_n`` from the circulant eigenvalue product."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    _check_K(K)
    if K == 1.0:
        return 0.0
    # ln(r/2) without forming 1/K^2, which overflows for tiny K
    log_half_r = math.log1p(-K * K) - 2.0 * math.log(K) - math.log(2.0)
    j = np.arange(n)
    one_minus_cos = 2.0 * np.sin(np.pi * j / n) ** 2
    with np.errstate(divide="ignore"):
        terms = np.logaddexp(log_half_r + np.log(one_minus_cos), 0.0)
    return -0.5 * float(np.sum(terms))


def kn_closed_form(n: int, K: float) -> float:
    r"""Product form ``K_n = prod_j [1 + (r/2)(1 - cos(2 pi j / n))]^(-1/2)``.

    ``r = (1 - K^2) / K^2 = sigma_f^2 / sigma_g^2``.
    """
    return math.exp(log_kn_closed_form(n, K))


_TABLE = {
    2: lambda K: K,
    3: lambda K: 4 * K**2 / (3 + K**2),
    4: lambda K: 2 * K**3 / (1 + K**2),
    5: lambda K: 16 * K**4 / (5 + 10 * K**2 + K**4),
    6: lambda K: 16 * K**5 / (3 + 10 * K**2 + 3 * K**4),
}


def kn_table(n: int, K: float) -> float:
    """Rational closed forms for ``2 <= n <= 6``."""
    if n not in _TABLE:
        raise UnsupportedOrderError(f"tabulated K_n only for n in 2..6, got {n}")
    _check_K(K)
    return float(_TABLE[n](K))


def kn_series(K: float, n_max: int) -> KSeries:
    """``K_1..K_{n_max}`` via :func:`kn_closed_form`."""
    if n_max < 2:
        raise ParameterDomainError(f"n_max must be >= 2, got {n_max}")
    _check_K(K, allow_zero=True)
    if K == 0:
        values = np.zeros(n_max)
    else:
        values = np.exp([log_kn_closed_form(n, K) for n in range(1, n_max + 1)])
    values[0] = 1.0
    return KSeries(K=float(K), values=values)


def fit_alpha(series: KSeries, n_min: int = DEFAULT_FIT_WINDOW[0], n_max: int = DEFAULT_FIT_WINDOW[1]) -> FitResult:
    """Least-squares fit of ``ln K_n = ln A - alpha * n`` over ``n_min..n_max``."""
    if not (2 <= n_min < n_max <= series.n_max):
        raise FitWindowError(
            f"fit window [{n_min}, {n_max}] must satisfy 2 <= n_min < n_max <= {series.n_max}"
        )
    if n_max - n_min + 1 < 3:
        raise FitWindowError("fit window needs at least 3 points")
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    y = series.values[n_min - 1 : n_max]
    if np.any(y <= 0):
        raise ParameterDomainError("K_n must be positive inside the fit window")
    logy = np.log(y)
    slope, intercept = np.polyfit(n, logy, 1)
    resid = logy - (slope * n + intercept)
    alpha = max(-float(slope), 0.0) + 0.0  # no negative zero
    return FitResult(
        alpha=alpha,
        S=math.exp(-alpha),
        n_min=n_min,
        n_max=n_max,
        residual=float(np.sqrt(np.mean(resid * resid))),
    )


def bunching_factor_S(K: float) -> float:
    """Per-photon bunching factor ``S = exp(-alpha(K)) = 2K / (1 + K)``.

    Large-n limit of ``K_{n+1} / K_n`` for the Gaussian model.
    """
    _check_K(K, allow_zero=True)
    return 2.0 * K / (1.0 + K)
