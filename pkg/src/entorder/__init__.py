"""Entanglement and quantum order parameters in BCS, eta-pairing and Bose-Hubbard states.

Closed forms for each model sit next to brute-force oracles built on the
dense tensor routines in :mod:`entorder.tensor`.
"""
from .tensor import (
    ATOL_SPECTRAL,
    ATOL_STRUCTURAL,
    MAX_DIMENSION,
    DimensionCapError,
    ShapeError,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    projector,
    reduced_state,
    schmidt_decompose,
)
from .measures import (
    OptimizerConfig,
    binary_entropy,
    eof_from_concurrence,
    fully_entangled_fraction,
    geometric_measure,
    log_negativity,
    nearest_product_overlap,
    negativity,
    pure_negativity_from_schmidt,
    teleportation_fidelity,
)
from .bcs import (
    BcsMode,
    BcsModel,
    GapTriple,
    InteractionRow,
    PairAmplitudes,
    bcs_ground_state_energy,
    bcs_log_negativity_total,
    gap_ratio_from_uv,
    hartree_fock_energy,
    pair_energy_epsilon,
    pair_state_vector,
    uv_from_gap,
)
from .eta import (
    DickeSpec,
    TwoSiteRdm,
    alpha_from_r,
    alpha_order_parameter,
    de_from_alpha_paper,
    dicke_asymptotics_report,
    dicke_state_vector,
    eta_two_site_rdm,
    gme_dicke_closed_form,
    odlro_pair_correlator,
)
from .bh import (
    MottSpec,
    SuperfluidSpec,
    bh_annihilation_expectation,
    bh_odlro_correlator,
    bh_order_parameter_r,
    mott_state_vector,
    superfluid_negativity_clt,
    superfluid_negativity_exact,
    superfluid_negativity_poisson_limit,
    superfluid_schmidt,
    superfluid_state_vector,
)

__version__ = "0.1.0"
