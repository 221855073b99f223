"""Finite-size catalysis toolkit: second-order conversion rates, catalyst
sizing, and exact simulation of correlated-catalytic protocols on classical
spectra."""

from ._core import (  # noqa: F401
    __version__,
    apply_ttransforms,
    burg_entropy,
    catalyst_dimension,
    locc_mixed_check,
    entropy_variance,
    eof_two_qubit,
    hashing_bound,
    inv_normal_cdf,
    lp_oracle,
    majorizes,
    min_n_search,
    multicopy_check,
    n_epsilon,
    optimal_chi,
    optimal_chi_majorizing,
    partial_trace,
    predicted_epsilon,
    rates,
    relative_entropy,
    relative_entropy_variance,
    renyi_entropy,
    run_protocol,
    sesqui_normal,
    shannon_entropy,
    sufficiency_check,
    thermo_majorizes,
    trace_distance,
    ttransform_sequence,
    von_neumann_entropy,
)

__all__ = [
    "apply_ttransforms",
    "burg_entropy",
    "catalyst_dimension",
    "locc_mixed_check",
    "entropy_variance",
    "eof_two_qubit",
    "hashing_bound",
    "inv_normal_cdf",
    "lp_oracle",
    "majorizes",
    "min_n_search",
    "multicopy_check",
    "n_epsilon",
    "optimal_chi",
    "optimal_chi_majorizing",
    "partial_trace",
    "predicted_epsilon",
    "rates",
    "relative_entropy",
    "relative_entropy_variance",
    "renyi_entropy",
    "run_protocol",
    "sesqui_normal",
    "shannon_entropy",
    "sufficiency_check",
    "thermo_majorizes",
    "trace_distance",
    "ttransform_sequence",
    "von_neumann_entropy",
]
