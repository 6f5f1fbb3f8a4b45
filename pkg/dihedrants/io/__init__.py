"""Graph file formats for dihedrants."""

from .graphio import (
    EDGELIST_HEADER,
    format_edgelist,
    format_graph,
    format_graph6,
    from_networkx,
    parse_edgelist,
    parse_graph6,
    read_graph,
    to_networkx,
    write_graph,
)

__all__ = [
    "EDGELIST_HEADER",
    "parse_edgelist",
    "format_edgelist",
    "parse_graph6",
    "format_graph6",
    "read_graph",
    "write_graph",
    "format_graph",
    "to_networkx",
    "from_networkx",
]
