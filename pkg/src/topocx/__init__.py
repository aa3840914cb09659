"""Topological domains beyond graphs: complexes, operators, spectra, embeddings
and higher-order message passing."""

from __future__ import annotations

from .algorithms import (
    Spectrum,
    betti_numbers,
    connected_components,
    dense_eigh,
    eigsh_smallest,
    hop_distance,
    integer_rank,
)
from .complexes import (
    CellComplex,
    CellId,
    CellKind,
    ColoredHyperGraph,
    CombinatorialComplex,
    Complex,
    SimplicialComplex,
)
from .embeddings import (
    Cell2Vec,
    EmbeddingTable,
    Neighborhood,
    cell2vec,
    higher_order_laplacian_eigenmap,
    random_walks,
)
from .errors import (
    EmptyDomain,
    InvalidCell,
    InvalidDim,
    InvalidNeighborhood,
    NoConvergence,
    NotFound,
    NotSymmetric,
    ParseError,
    RankViolation,
    ShapeError,
    TopoError,
    UnsupportedFace,
    UnsupportedRank,
    UnsupportedSignedIncidence,
)
from .homp import (
    Activation,
    Aggregation,
    Arrow,
    FeatureMatrix,
    HompLayerSpec,
    Merge,
    Operator,
    homp_forward,
    init_weights,
    scconv_reference_layer,
)
from .io import parse_complex, parse_off, serialize_complex, write_embeddings, write_matrix_market
from .operators import (
    SparseMatrix,
    adjacency_matrix,
    coadjacency_matrix,
    down_laplacian_matrix,
    hodge_laplacian_matrix,
    incidence_matrix,
    normalized_laplacian,
    up_laplacian_matrix,
)
from .transforms import graph_to_clique_complex, mesh_to_complex, to_combinatorial

__all__ = [
    "Spectrum",
    "betti_numbers",
    "connected_components",
    "dense_eigh",
    "eigsh_smallest",
    "hop_distance",
    "integer_rank",
    "CellComplex",
    "CellId",
    "CellKind",
    "ColoredHyperGraph",
    "CombinatorialComplex",
    "Complex",
    "SimplicialComplex",
    "Cell2Vec",
    "EmbeddingTable",
    "Neighborhood",
    "cell2vec",
    "higher_order_laplacian_eigenmap",
    "random_walks",
    "EmptyDomain",
    "InvalidCell",
    "InvalidDim",
    "InvalidNeighborhood",
    "NoConvergence",
    "NotFound",
    "NotSymmetric",
    "ParseError",
    "RankViolation",
    "ShapeError",
    "TopoError",
    "UnsupportedFace",
    "UnsupportedRank",
    "UnsupportedSignedIncidence",
    "Activation",
    "Aggregation",
    "Arrow",
    "FeatureMatrix",
    "HompLayerSpec",
    "Merge",
    "Operator",
    "homp_forward",
    "init_weights",
    "scconv_reference_layer",
    "parse_complex",
    "parse_off",
    "serialize_complex",
    "write_embeddings",
    "write_matrix_market",
    "SparseMatrix",
    "adjacency_matrix",
    "coadjacency_matrix",
    "down_laplacian_matrix",
    "hodge_laplacian_matrix",
    "incidence_matrix",
    "normalized_laplacian",
    "up_laplacian_matrix",
    "graph_to_clique_complex",
    "mesh_to_complex",
    "to_combinatorial",
]

__version__ = "0.1.0"
