"""Vector colorings, theta-bar, graph products, and quantum certificates."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConvergenceError,
    DimensionError,
    DomainError,
    FeasibilityError,
    LimitExceededError,
    NotPsdError,
    ParseError,
    ValidationError,
    VecchromError,
)
from .graphs import (
    Graph,
    ProductKind,
    complement,
    erdos_renyi,
    generate,
    graph_from_edges,
    is_bipartite,
    is_homomorphism,
    load_graph,
    parse_edge_list,
    product,
    remove_isolated,
    save_graph,
    union,
    write_edge_list,
)
from .linalg import Spectrum, eig_sym, gram_factor, kron, msum, project_psd, schur
from .sdp import (
    SdpProblem,
    SdpSolution,
    SolverConfig,
    build_chi_vec,
    build_theta_bar,
    check_feasibility,
    solve,
)
from .params import (
    OneHomReport,
    ParamResult,
    chi_vec,
    chromatic_number,
    one_homogeneous_check,
    proper_coloring,
    spectral_lower_bound,
    spectral_vector_chromatic,
    theta_bar,
)
from .colorings import (
    ClassicalColoring,
    VectorColoring,
    cartesian_tensor_coloring,
    extract_coloring,
    is_proper_coloring,
    lift_coloring,
    load_coloring,
    modular_coloring,
    save_coloring,
    simplex_coloring,
    verify_coloring,
)
from .quantum import (
    MeasurementTuple,
    QuantumHomomorphism,
    classical_embedding,
    compose_classical,
    load_certificate,
    measurement_adjacent,
    pad_colors,
    product_qhom,
    quantum_sabidussi,
    save_certificate,
    verify_measurement,
    verify_quantum_hom,
)
from .identities import IdentityCheck, chi_cartesian_exact, run_suite
