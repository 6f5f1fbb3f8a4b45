"""Graph file formats: edgelist v1 and graph6."""

import logging
from pathlib import Path
from typing import Optional, Union

import networkx as nx

from ..core.errors import DihedrantsError, GraphFormatError
from ..core.graph import Graph

logger = logging.getLogger(__name__)

EDGELIST_HEADER = "# edgelist v1"


def parse_edgelist(text: str, path: Optional[Path] = None) -> Graph:
    """Parse edgelist v1: ``n m`` then ``m`` lines ``u v`` with ``0 <= u < v < n``.

    Lines starting with ``#`` are comments; blank lines are ignored.

    Raises:
        GraphFormatError: With the offending line number
    """
    header = None
    edges = []
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(path, number, f"Expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(path, number, f"Expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError(path, number, "Vertex and edge counts must be non-negative")
            header = (a, b)
            continue
        n = header[0]
        if not 0 <= a < b < n:
            raise GraphFormatError(path, number, f"Edge ({a}, {b}) must satisfy 0 <= u < v < {n}")
        if (a, b) in seen:
            raise GraphFormatError(path, number, f"Duplicate edge ({a}, {b})")
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise GraphFormatError(path, None, "Missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(path, None, f"Header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_edgelist(g: Graph) -> str:
    lines = [EDGELIST_HEADER, f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def to_networkx(g: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges())
    return nx_graph


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """Relabel nodes ``0 .. n-1`` in sorted order.

    Raises:
        GraphFormatError: For directed graphs, multigraphs or self-loops
    """
    if nx_graph.is_directed() or nx_graph.is_multigraph():
        raise GraphFormatError(None, None, "Only simple undirected graphs are supported")
    nodes = sorted(nx_graph.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = []
    for u, v in nx_graph.edges():
        if u == v:
            raise GraphFormatError(None, None, f"Self-loop at {u}")
        edges.append((index[u], index[v]))
    return Graph.from_edges(len(nodes), edges)


def parse_graph6(data: Union[str, bytes], path: Optional[Path] = None) -> Graph:
    """Decode one graph6 string; a ``>>graph6<<`` header is accepted.

    Raises:
        GraphFormatError: If the data is not valid graph6
    """
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as e:
            raise GraphFormatError(path, 1, "graph6 data must be ASCII") from e
    raw = data.strip()
    if raw.startswith(b">>graph6<<"):
        raw = raw[len(b">>graph6<<") :]
    if not raw or b"\n" in raw:
        raise GraphFormatError(path, None, "Expected exactly one graph6 string")
    try:
        return from_networkx(nx.from_graph6_bytes(raw))
    except (nx.NetworkXError, ValueError) as e:
        raise GraphFormatError(path, 1, f"Invalid graph6 data ({e})") from e


def format_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii")


def read_graph(path: Path, g6: bool = False) -> Graph:
    """Read a graph file in edgelist v1 (default) or graph6 format.

    Raises:
        GraphFormatError: If the file cannot be read or parsed
    """
    try:
        content = path.read_bytes()
    except OSError as e:
        raise GraphFormatError(path, None, f"Cannot read file ({e.strerror})") from e
    if g6:
        return parse_graph6(content, path)
    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(path, None, "File is not UTF-8") from e
    return parse_edgelist(text, path)


def format_graph(g: Graph, g6: bool = False) -> str:
    return format_graph6(g) if g6 else format_edgelist(g)


def write_graph(path: Path, g: Graph, g6: bool = False) -> None:
    """Write ``g`` with LF line endings.

    Raises:
        DihedrantsError: If the file cannot be written
    """
    try:
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(format_graph(g, g6))
    except OSError as e:
        raise DihedrantsError(f"Cannot write graph file: {path} ({e.strerror})") from e
    logger.debug("Wrote %s graph with %d vertices to %s", "graph6" if g6 else "edgelist", g.n, path)
