"""Estrada and Laplacian Estrada indices of graphs, with exhaustive tree checks."""

from .errors import (
    GraphFormatError,
    InvalidInputError,
    InvalidParameterError,
    NumericalFailure,
    PreconditionError,
)
from .graph_core import (
    Graph,
    build_broom,
    build_complete,
    build_cycle,
    build_double_star,
    build_path,
    build_star,
    is_bipartite,
    is_isomorphic_tree,
    is_tree,
    line_graph,
    parse_edgelist,
    parse_graph6,
)
from .spectral import (
    check_line_graph_identity,
    estrada_index,
    estrada_via_moments,
    laplacian_estrada_index,
    lee_via_line_moments,
    spectral_moments_walks,
)

__version__ = "0.1.0"
