"""zzrouter: routing of commuting two-qubit interaction layers onto
connectivity-constrained quantum processors.

The package splits the job into an initial placement stage (edge coloring,
chaining, Hamiltonian-path embedding) and a greedy swap router driven by
the net effect of each swap on the remaining gate distances, plus an
odd-even swap-network baseline, closed-form network bounds, an independent
circuit verifier, and a benchmark harness exposed over HTTP and a CLI.
"""

__version__ = "0.1.0"

from .baselines import (
    BoundEstimate,
    grid_sn_bounds,
    kreg_sn_bounds,
    linear_sn_bounds,
    linear_sn_route,
)
from .circuit import CircuitMetrics, Gate, Layer, RoutedCircuit
from .coloring import EdgeColoring, edge_coloring, maximal_matching
from .graphs import (
    DisconnectedGraphError,
    DistanceMatrix,
    EdgeListParseError,
    HardwareGraph,
    ProblemGraph,
    all_pairs_distances,
    canonical_edge,
    gen_erdos_renyi,
    gen_k_regular,
    parse_hardware_graph,
    parse_problem_graph,
    square_grid,
)
from .mapper import (
    Chain,
    Mapping,
    MappingError,
    NoHamiltonianPathError,
    build_chain,
    embed_chain,
    hamiltonian_path,
    init_sets,
    place,
    select_color_pair,
)
from .router import RouterConfig, RoutingError, route
from .verifier import VerifyReport, verify

__all__ = [
    "BoundEstimate",
    "Chain",
    "CircuitMetrics",
    "DisconnectedGraphError",
    "DistanceMatrix",
    "EdgeColoring",
    "EdgeListParseError",
    "Gate",
    "HardwareGraph",
    "Layer",
    "Mapping",
    "MappingError",
    "NoHamiltonianPathError",
    "ProblemGraph",
    "RoutedCircuit",
    "RouterConfig",
    "RoutingError",
    "VerifyReport",
    "all_pairs_distances",
    "build_chain",
    "canonical_edge",
    "edge_coloring",
    "embed_chain",
    "gen_erdos_renyi",
    "gen_k_regular",
    "grid_sn_bounds",
    "hamiltonian_path",
    "init_sets",
    "kreg_sn_bounds",
    "linear_sn_bounds",
    "linear_sn_route",
    "maximal_matching",
    "parse_hardware_graph",
    "parse_problem_graph",
    "place",
    "route",
    "select_color_pair",
    "square_grid",
    "verify",
]
