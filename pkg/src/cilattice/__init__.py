"""Neighbourhood lattices and lattice decompositions of compositional graphoids."""
from .core import (
    EMPTY,
    CachingOracle,
    CITriple,
    GroundSet,
    IndependenceOracle,
    IntervalLattice,
    VarSet,
    caching_wrapper,
    elementary_query,
    vs,
)
from .exceptions import (
    CILatticeError,
    DecompositionInconsistencyError,
    GenerationFailureError,
    InsufficientSamplesError,
    InvalidArgumentError,
    NonGraphoidError,
    NumericDegeneracyError,
    TooLargeError,
    UnsupportedQueryError,
)
from .stats import (
    CovarianceSpec,
    PartialCorrelation,
    SampleMatrix,
    partial_correlation,
    regression_coefficients,
    regression_support,
    sample_partial_correlation,
    signal_strengths,
)
from .oracles import (
    GaussianOracle,
    GraphSeparationOracle,
    SampleGaussianOracle,
    TableGraphoid,
    TableOracle,
    UndirectedGraph,
    example11_gaussian,
    exact_gaussian_oracle,
    graph_separation_oracle,
    sample_gaussian_oracle,
    studeny_graphoid,
    table_oracle,
)
from .lattice import (
    Decomposition,
    all_uncovered_up_to_size,
    compute_lattice,
    compute_mb,
    find_uncovered_set,
    full_decomposition,
    query_complexity_report,
    sparse_decomposition,
)
from .ci import (
    CIEnumeration,
    CIVerdict,
    count_ci,
    count_possible_ci,
    elementary_ci_check,
    enumerate_ci,
    general_ci_query,
)
from .graphtools import (
    component_split,
    decomposed_boundary,
    decomposed_maximum,
    faithful_gaussian,
    markov_chain_gaussian,
    path_graph_boundary,
    path_graph_maximum,
)
from .verify import AxiomReport, brute_boundary, brute_decomposition, brute_lattice, check_axioms
from .experiment import ExperimentConfig, ExperimentReport, run_recovery_experiment

__version__ = "0.1.0"
