"""Concentration graphs by low-order conditioning.

Graph parameters (separability order, degree, degree two), conditional
independence oracles and the nested k-graph learner with its degree-two
stopping rule.
"""

from lowcond.errors import (
    BudgetExceeded,
    DomainError,
    GenerationError,
    LowcondError,
    NumericError,
    ParseError,
    UnknownVertexError,
    ValidationError,
)
from lowcond.graph import (
    UndirectedGraph,
    all_graphs,
    complete_graph,
    connected_components,
    covariance_separates,
    empty_graph,
    induced_subgraph,
    neighbors,
    parse_graph,
    path_graph,
    random_graph,
    read_graph,
    separates,
    serialize_graph,
    star_graph,
)
from lowcond.learner import (
    KGraphSequence,
    LearnReport,
    build_k_graph,
    build_k_partial_graph,
    k_graph_sequence,
    learn_with_stopping,
    structural_hamming_distance,
)
from lowcond.oracle import (
    CIOracle,
    FisherZOracle,
    GaussianModel,
    GaussianOracle,
    GraphOracle,
    TableOracle,
    TestConfig,
    fisher_z_oracle,
    gaussian_oracle,
    generate_faithful_model,
    graph_oracle,
    partial_correlation,
    sample,
)
from lowcond.separators import (
    INFINITE,
    SeparabilityReport,
    degree,
    degree_of,
    degree_two,
    degree_two_of,
    is_minimal_separator,
    is_separator,
    min_separator_size,
    minimal_separator_near,
    minimal_separators,
    minimum_separator,
    separability_order,
    separability_report,
)

__version__ = "0.1.0"
