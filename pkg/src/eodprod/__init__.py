"""Efficient open domination in Cartesian products: search, certificates, tree family."""

from .graph_core import Graph, ProductDims, cartesian_product, parse_graph, format_graph
from .eod_search import EodCertificate, SearchOptions, find_eod_set, enumerate_eod_sets, is_eod_set

__all__ = [
    "Graph",
    "ProductDims",
    "cartesian_product",
    "parse_graph",
    "format_graph",
    "EodCertificate",
    "SearchOptions",
    "find_eod_set",
    "enumerate_eod_sets",
    "is_eod_set",
]
