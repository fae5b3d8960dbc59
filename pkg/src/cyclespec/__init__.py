"""Exact and simulated cycle statistics of the interchange process on weighted graphs."""
from .errors import CapabilityError, DomainError
from .partitions import (
    Partition,
    class_size,
    dimension,
    dominates,
    enumerate_partitions,
    hook_dimension_formula,
    hook_shape,
)
from .symfun import (
    MonomialExpansion,
    SchurExpansion,
    ch_alpha_k,
    derive_a_rho_via_pieri,
    kostka,
    monomial_to_schur,
    pieri_multiply,
    schur_to_monomial,
)
from .characters import (
    ClassFunction,
    a_rho_closed_form,
    alpha_k,
    decompose,
    inner_product,
    mn_character,
    psi_inner_product,
)
from .spectra import (
    IrrepSpectrum,
    WeightedGraph,
    build_graph,
    hook_eigenvalues_bacher,
    irrep_laplacian_eigenvalues,
    isospectral_pair_search,
    laplacian_eigenvalues,
    permutation_module_spectrum,
    read_graph,
)
from .formulas import (
    TimeGrid,
    chuk_bound,
    equilibration_time,
    expected_k_cycles,
    hypercube_prob_profile,
    matrix_tree_check,
    prob_full_cycle,
)
from .mc import SimConfig, SimReport, cycle_observables, magnetization_estimator, run_simulation

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "DomainError",
    "Partition",
    "class_size",
    "dimension",
    "dominates",
    "enumerate_partitions",
    "hook_dimension_formula",
    "hook_shape",
    "MonomialExpansion",
    "SchurExpansion",
    "ch_alpha_k",
    "derive_a_rho_via_pieri",
    "kostka",
    "monomial_to_schur",
    "pieri_multiply",
    "schur_to_monomial",
    "ClassFunction",
    "a_rho_closed_form",
    "alpha_k",
    "decompose",
    "inner_product",
    "mn_character",
    "psi_inner_product",
    "IrrepSpectrum",
    "WeightedGraph",
    "build_graph",
    "hook_eigenvalues_bacher",
    "irrep_laplacian_eigenvalues",
    "isospectral_pair_search",
    "laplacian_eigenvalues",
    "permutation_module_spectrum",
    "read_graph",
    "TimeGrid",
    "chuk_bound",
    "equilibration_time",
    "expected_k_cycles",
    "hypercube_prob_profile",
    "matrix_tree_check",
    "prob_full_cycle",
    "SimConfig",
    "SimReport",
    "cycle_observables",
    "magnetization_estimator",
    "run_simulation",
]
