"""Simple undirected graphs with bitset adjacency.

Row ``v`` of a graph is an ``int`` whose bit ``w`` is set iff ``v ~ w``.
Vertex sets are passed around the same way, so intersections are a single
``&`` regardless of graph size.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from typing_extensions import Self

from .errors import (
    DegreeMismatchError,
    GraphError,
    InvalidEdgeError,
    NotAnEdgeError,
    OverlappingVertexSetsError,
    VertexRangeError,
)
from .permgroup import Permutation

logger = logging.getLogger(__name__)

# Girth of a forest, diameter of a disconnected graph.
INFINITE = math.inf

Extent = Union[int, float]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {n}")
        if len(rows) != n:
            raise GraphError(f"Expected {n} adjacency rows, got {len(rows)}")
        limit = 1 << n
        for v, row in enumerate(rows):
            if row < 0 or row >= limit:
                raise GraphError(f"Row {v} references vertices outside the graph")
            if (row >> v) & 1:
                raise InvalidEdgeError((v, v))
            for w in iter_bits(row):
                if not (rows[w] >> v) & 1:
                    raise GraphError(f"Adjacency is not symmetric at ({v}, {w})")
        self._n = n
        self._rows = tuple(rows)

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> Self:
        graph = object.__new__(cls)
        graph._n = n
        graph._rows = tuple(rows)
        return graph

    @classmethod
    def empty(cls, n: int) -> Self:
        return cls._trusted(n, [0] * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> Self:
        """Build a graph from an edge list; repeated edges are merged.

        Raises:
            VertexRangeError: If an endpoint is outside the graph
            InvalidEdgeError: If an edge is a loop
        """
        rows = [0] * n
        for u, v in edges:
            for w in (u, v):
                if not 0 <= w < n:
                    raise VertexRangeError(w, n)
            if u == v:
                raise InvalidEdgeError((u, v))
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise VertexRangeError(v, self._n)

    def neighbor_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._rows[v]

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self._rows]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self._rows[u] >> v) & 1)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in row-scan order."""
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.num_edges})"


@dataclass(frozen=True)
class DistancePartition:
    """BFS layers ``cells[i]`` (as bitsets) around ``source``."""

    source: int
    cells: Tuple[int, ...]
    eccentricity: int
    unreachable: int

    def layer(self, i: int) -> List[int]:
        if i < 0 or i >= len(self.cells):
            return []
        return list(iter_bits(self.cells[i]))

    def layer_mask(self, i: int) -> int:
        if i < 0 or i >= len(self.cells):
            return 0
        return self.cells[i]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(cell.bit_count() for cell in self.cells)

    @property
    def reachable(self) -> int:
        mask = 0
        for cell in self.cells:
            mask |= cell
        return mask


def distance_partition(g: Graph, u: int) -> DistancePartition:
    """Layers of vertices at each distance from ``u``.

    Raises:
        VertexRangeError: If ``u`` is not a vertex
    """
    if not 0 <= u < g.n:
        raise VertexRangeError(u, g.n)
    rows = g.rows
    seen = 1 << u
    frontier = 1 << u
    cells = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        cells.append(nxt)
        frontier = nxt
    everything = (1 << g.n) - 1
    return DistancePartition(
        source=u,
        cells=tuple(cells),
        eccentricity=len(cells) - 1,
        unreachable=everything & ~seen,
    )


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return distance_partition(g, 0).unreachable == 0


def diameter(g: Graph) -> Extent:
    """Largest eccentricity, or ``INFINITE`` for disconnected graphs."""
    if g.n == 0:
        return 0
    best = 0
    for u in range(g.n):
        dp = distance_partition(g, u)
        if dp.unreachable:
            return INFINITE
        best = max(best, dp.eccentricity)
    return best


def girth(g: Graph) -> Extent:
    """Length of a shortest cycle, ``INFINITE`` for forests."""
    rows = g.rows
    n = g.n
    best: Extent = INFINITE
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        queue = [s]
        for u in queue:
            if 2 * dist[u] + 1 >= best:
                break
            for v in iter_bits(rows[u]):
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def is_bipartite(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """A bipartition ``(A, B)`` with vertex 0 in ``A``, or ``None`` for odd cycles."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        for u in queue:
            for v in iter_bits(g.rows[u]):
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    side_a = tuple(v for v in range(g.n) if color[v] == 0)
    side_b = tuple(v for v in range(g.n) if color[v] == 1)
    return side_a, side_b


def valency(g: Graph) -> Optional[int]:
    """Common degree of a regular graph, ``None`` otherwise."""
    degrees = set(g.degrees())
    if len(degrees) == 1:
        return degrees.pop()
    if not degrees:
        return 0
    return None


def triangles_through_edge(g: Graph, edge: Tuple[int, int]) -> int:
    """Number of common neighbours of the endpoints.

    Raises:
        NotAnEdgeError: If ``edge`` is not an edge of ``g``
    """
    u, v = edge
    if not g.has_edge(u, v):
        raise NotAnEdgeError(edge)
    return (g.rows[u] & g.rows[v]).bit_count()


def edge_count_between(g: Graph, first: Iterable[int], second: Iterable[int]) -> int:
    """Number of edges with one end in each of two disjoint vertex sets."""
    first_list = list(first)
    second_mask = mask_of(second)
    if mask_of(first_list) & second_mask:
        raise OverlappingVertexSetsError(iter_bits(mask_of(first_list) & second_mask))
    return sum((g.rows[u] & second_mask).bit_count() for u in first_list)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """``[U]``: vertices relabelled ``0..|U|-1`` in increasing order."""
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < g.n:
            raise VertexRangeError(v, g.n)
    index = {v: i for i, v in enumerate(chosen)}
    keep = mask_of(chosen)
    rows = []
    for v in chosen:
        rows.append(mask_of(index[w] for w in iter_bits(g.rows[v] & keep)))
    return Graph._trusted(len(chosen), rows)


def bipartite_between(g: Graph, first: Iterable[int], second: Iterable[int]) -> Graph:
    """``[U, W]``: U then W (each sorted), keeping only U-W edges.

    Raises:
        OverlappingVertexSetsError: If U and W intersect
    """
    left = sorted(set(first))
    right = sorted(set(second))
    common = set(left) & set(right)
    if common:
        raise OverlappingVertexSetsError(common)
    for v in left + right:
        if not 0 <= v < g.n:
            raise VertexRangeError(v, g.n)
    order = left + right
    index = {v: i for i, v in enumerate(order)}
    left_mask = mask_of(left)
    right_mask = mask_of(right)
    rows = []
    for v in order:
        opposite = right_mask if (left_mask >> v) & 1 else left_mask
        rows.append(mask_of(index[w] for w in iter_bits(g.rows[v] & opposite)))
    return Graph._trusted(len(order), rows)


def complement(g: Graph) -> Graph:
    everything = (1 << g.n) - 1
    return Graph._trusted(g.n, [everything & ~row & ~(1 << v) for v, row in enumerate(g.rows)])


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    """The graph with edge ``{p(u), p(v)}`` for every edge ``{u, v}``.

    Raises:
        DegreeMismatchError: If ``p`` does not act on ``n`` points
    """
    if p.degree != g.n:
        raise DegreeMismatchError(g.n, p.degree)
    images = p.images
    rows = [0] * g.n
    for u, row in enumerate(g.rows):
        rows[images[u]] = mask_of(images[w] for w in iter_bits(row))
    return Graph._trusted(g.n, rows)


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if p.degree != g.n:
        raise DegreeMismatchError(g.n, p.degree)
    images = p.images
    rows = g.rows
    for u, row in enumerate(rows):
        mapped = 0
        for w in iter_bits(row):
            mapped |= 1 << images[w]
        if mapped != rows[images[u]]:
            return False
    return True
