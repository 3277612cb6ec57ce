"""degcensus: asymptotic census estimates for degree-constrained graphs,
with exact oracles, switching identities, and seeded samplers to verify
them at desk scale."""

from .core import (
    ASSUMPTION_CONTEXTS,
    AssumptionReport,
    BipartiteGraph,
    BudgetError,
    CensusError,
    Cutoffs,
    DegreePair,
    DegreeSequenceError,
    DerivedStats,
    DomainError,
    ForbiddenGraph,
    ForbiddenStats,
    InfeasibleForbiddenError,
    ParityError,
    SquareOnlyError,
    assumption_report,
    bipartite_to_digraph,
    cutoffs,
    derive_stats,
    digraph_to_bipartite,
    erdos_gallai_feasible,
    falling,
    forbidden_stats,
    gale_ryser_feasible,
    loop_weight,
)
from .estimators import (
    LogEstimate,
    PermutationFunctionalStats,
    RegularPermanentEstimate,
    SummationBounds,
    SummationInput,
    UndirectedCountEstimate,
    avoidance_factor,
    estimate_bipartite,
    estimate_bipartite_avoiding,
    estimate_loopfree_avoiding,
    estimate_loopfree_digraphs,
    estimate_oriented,
    estimate_undirected,
    expected_orientations,
    expected_permanent_dense,
    expected_permanent_regular,
    expected_permanent_sparse,
    loopfree_probability,
    pauling_and_residual_entropy,
    permanent_complement_ie,
    permutation_functional_stats,
    q_correction,
    subgraph_probability,
    summation_bounds,
    twocycle_free_probability,
)
from .oracles import (
    count_bipartite,
    count_bipartite_stratified,
    count_eulerian_orientations,
    count_loopfree,
    count_orientations_with_degrees,
    count_oriented,
    count_partial_matchings,
    enumerate_bipartite,
    enumerate_undirected,
    exact_expected_permanent,
    expected_permanent_transversal_sum,
    graph_to_matrix,
    naive_permanent,
    permutation_moment_oracle,
    ryser_permanent,
)
from .sampling import (
    EmpiricalEstimate,
    SamplerConfig,
    estimate_event_probability,
    estimate_expected_orientation_count,
    iter_bipartite_samples,
    sample_bipartite,
    sample_undirected,
)
from .switching import (
    ForwardSwitchSpec,
    SwitchConditionError,
    SwitchCountReport,
    TwoCycleSwitchSpec,
    apply_forward_x_switch,
    apply_reverse_twocycle_switch,
    apply_reverse_x_switch,
    apply_twocycle_switch,
    count_forward_x_switches,
    count_loopfree_removal_switches,
    count_reverse_twocycle_switches,
    count_reverse_x_switches,
    count_twocycle_removal_switches,
    count_twocycle_switches,
    loopfree_removal_switch,
    twocycle_removal_switch,
    verify_twocycle_identity,
    verify_x_switch_identity,
)

__version__ = "0.1.0"
