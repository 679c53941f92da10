"""Edge PageRank and Hodge decomposition on simplicial complexes of dimension <= 2."""
from .complex import ComplexError, Graph, SimplicialComplex, build_complex, fill_triangles, underlying_graph
from .epr import ConfigError, EprConfig, EprResult, edge_pagerank, epr_all_edges, epr_dynamical, node_pagerank, personalized_epr
from .hodge import HodgeComponents, component_norms, decompose, harmonic_dimension
from .linalg import SolverError
from .operators import BoundaryOperators, LaplacianBundle, boundary_operators, hodge_laplacian
from .structure import BridgeLabel, classify_edges, global_bridges, tie_range

__version__ = "0.1.0"
