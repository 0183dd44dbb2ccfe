"""Reliability functions for classical-quantum channels with pure-state signals."""
from .constellation import (
    CoherentAmplitude,
    Kind,
    PriorVector,
    SignalSet,
    WeightedGram,
    coherent_overlap,
    make_custom_signal_set,
    make_signal_set,
    weighted_gram,
)
from .gallager import (
    GallagerPoint,
    StochasticMatrix,
    capacity_c1,
    gallager_e0,
    gallager_exponent,
    helstrom_channel,
    helstrom_family,
    mutual_information,
)
from .quantum_exponent import (
    ExponentAtRate,
    ExponentCurve,
    ExponentPoint,
    MuAtS,
    VonNeumann,
    cutoff_rate,
    dmu_ds,
    error_probability_bound,
    max_entropy,
    mu,
    optimize_priors,
    optimize_s,
    reliability_at_rate,
    reliability_curve,
)
from .spectra import (
    Spectrum,
    binary_eigenvalues_closed_form,
    hermitian_eigenvalues,
    von_neumann_entropy,
)

__version__ = "0.1.0"
