"""Cut sparsification by edge strength: strength estimation, compression, smoothing and flows."""

__version__ = "0.1.0"

from .certificate import PartitionResult, partition, sparse_certificate, weak_edges
from .errors import CutSparseError, EstimationError, GraphError, InvalidCutError, ParseError, SizeCapError
from .flow import CutResult, FlowAssignment, approx_max_flow, approx_min_cut, max_flow, min_st_cut
from .graph import Cut, Graph, UnionFind, add, connected_components, contract, cut_value, scale
from .io import format_ghct, parse_ghct, parse_graph, read_graph
from .oracle import appendix_harness, enumerate_cuts, oracle_min_cut, oracle_min_st_cut, oracle_strengths
from .sampling import (
    CompressedGraph,
    SmoothedGraph,
    SparsifyParams,
    compress,
    random_division,
    smooth,
    uniform_sample,
)
from .strength import StrengthLabels, estimation, exact_strengths, mst_bounds, window_estimation

__all__ = [
    "__version__",
    "PartitionResult",
    "partition",
    "sparse_certificate",
    "weak_edges",
    "CutSparseError",
    "EstimationError",
    "GraphError",
    "InvalidCutError",
    "ParseError",
    "SizeCapError",
    "CutResult",
    "FlowAssignment",
    "approx_max_flow",
    "approx_min_cut",
    "max_flow",
    "min_st_cut",
    "Cut",
    "Graph",
    "UnionFind",
    "add",
    "connected_components",
    "contract",
    "cut_value",
    "scale",
    "format_ghct",
    "parse_ghct",
    "parse_graph",
    "read_graph",
    "appendix_harness",
    "enumerate_cuts",
    "oracle_min_cut",
    "oracle_min_st_cut",
    "oracle_strengths",
    "CompressedGraph",
    "SmoothedGraph",
    "SparsifyParams",
    "compress",
    "random_division",
    "smooth",
    "uniform_sample",
    "StrengthLabels",
    "estimation",
    "exact_strengths",
    "mst_bounds",
    "window_estimation",
]
