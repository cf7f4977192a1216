"""Paving matroids, correlation/balance analysis, and bases-exchange walks.

The package provides:

* explicit matroids with axiom checking and minors (:mod:`.matroid`),
* paving and sparse paving matroids given by their rank-size circuits,
  correlation reports, and the exhaustive balance scan (:mod:`.paving`),
* Hamiltonian-cycle circuit families (:mod:`.hamilton`),
* the bases-exchange graph, its exact edge expansion, the uniform random
  walk, and the sampling-based approximate basis counter (:mod:`.walk`),
* the Steiner system S(5,8,24) and the rank-6 paving matroid whose
  distinguished pair is positively correlated (:mod:`.steiner`).
"""

from .errors import (
    BudgetError,
    ColoopError,
    ConstructionError,
    FormatError,
    GroundSetError,
    InvalidBasisError,
    LoopError,
    MatroidError,
    NotPavingError,
    VerificationError,
)
from .matroid import (
    ExplicitMatroid,
    MinorSpec,
    apply_minor,
    contract,
    delete,
    exact_count,
    exchange_axiom_spot_check,
    is_coloop,
    is_loop,
    uniform_matroid,
    verify_exchange_axiom,
)
from .paving import (
    BalanceResult,
    BalanceViolation,
    CircuitFamily,
    CorrelationReport,
    bases_from_circuits,
    basis_masks_from_circuits,
    correlation,
    dyer_density_bound,
    family_contract,
    family_delete,
    is_balanced,
    lemma2_inequalities,
    lemma2_vertex_degree_bounds,
    random_sparse_family,
    validate_paving,
    validate_sparse,
)
from .hamilton import (
    Graph,
    complete_graph,
    cycle_graph,
    from_hamiltonian_cycles,
    hamiltonian_count_identity,
    petersen_graph,
)
from .walk import (
    ChainRecord,
    CountEstimate,
    ExchangeGraph,
    WalkState,
    apply_walk_step,
    approx_count,
    build_exchange_graph,
    edge_expansion,
    exact_walk_distribution,
    is_connected,
    lex_least_basis,
    sample_bases,
    sample_basis,
    tv_decay_exact,
    tv_distance,
    uniform_distribution,
    walk_state,
    walk_step,
)
from .steiner import (
    CounterexampleReport,
    SteinerSystem,
    block_counts,
    build_counterexample,
    build_steiner_system,
    counterexample_matroid,
    steiner_system_cached,
    verify_counterexample,
    verify_steiner,
)

__version__ = "0.1.0"
