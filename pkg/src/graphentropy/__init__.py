"""Graph entropy, fractional chromatic numbers, minimum-entropy colorings and
certificates for entropy-symmetric graphs."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .graph import (
    Graph,
    VertexMap,
    bipartition,
    bridges,
    builtin,
    complement,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_vertex_transitive,
    line_graph,
    or_product,
    parse_edge_list,
    format_edge_list,
    path_graph,
    petersen_graph,
    star_graph,
    structure_queries,
    substitute,
    union_same_vertices,
)
from .distribution import Distribution, distribution_substitute, product_distribution
from .combinatorics import (
    all_odd_cuts_at_least,
    chromatic_number,
    clique_cover_by_max_cliques,
    max_weight_independent_set,
    maximal_independent_sets,
    maximum_cliques,
    maximum_matching_bipartite,
)
from .entropy import (
    EntropyResult,
    KktCertificate,
    PolytopePoint,
    binary_entropy,
    entropy_upper_bound_from_point,
    graph_entropy,
    kkt_residual_line_graph,
    shannon_entropy,
)
from .closed_forms import (
    complete_graph_entropy,
    components_entropy,
    korner_marton_entropy,
    multipartite_entropy,
)
from .fractional import fractional_chromatic_number, fractional_edge_chromatic_number, is_k_graph
from .certification import (
    SymmetryVerdict,
    certify_symmetric,
    certify_symmetric_bipartite,
    certify_symmetric_bridgeless_cubic,
    certify_symmetric_line_of_kgraph,
    certify_symmetric_numeric,
    certify_symmetric_perfect,
    certify_symmetric_vertex_transitive,
    is_perfect,
)
from .chromatic import Coloring, chromatic_entropy_bounds, min_entropy_coloring, or_product_convergence
