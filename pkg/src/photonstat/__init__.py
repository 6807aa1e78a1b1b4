"""Multi-photon indistinguishability, bunching and photon statistics.

Gaussian-spectrum model of N separable single-photon emitters: multi-photon
indistinguishability ``K_n``, the permutation bunching coefficient ``B_n``,
the resulting photon-number distribution, ``g2(0)`` and the
indistinguishability-driven statistical transition.
"""

__version__ = "0.1.0"

from .combinatorics import (
    EXACT_LIMIT,
    BunchingTable,
    LogNumber,
    bunching_coefficient,
    bunching_series,
    derangement_count,
    rencontres_number,
)
from .errors import *  # noqa: F401,F403
from .montecarlo import McEstimate, mc_kn_estimate, sample_center_frequencies
from .spectral import (
    FitResult,
    KSeries,
    SpectralModel,
    bunching_factor_S,
    fit_alpha,
    kn_closed_form,
    kn_determinant,
    kn_series,
    kn_table,
    pairwise_indistinguishability,
    single_photon_overlap,
)
from .statistics import (
    EnsembleParams,
    PhotonNumberDistribution,
    ThermalPoint,
    TransitionResult,
    bose_einstein,
    coherence_scan,
    ensemble_distribution,
    mean_photon_number,
    modified_bose_einstein,
    second_order_coherence,
    thermal_mapping,
    transition_point,
)
