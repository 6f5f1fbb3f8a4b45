"""Custom error types for dihedrants."""

from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple


class DihedrantsError(Exception):
    """Base class for dihedrants errors."""

    pass


class GroupError(DihedrantsError):
    """Error raised by permutation-group operations."""

    pass


class DegreeMismatchError(GroupError):
    """Error when permutations (or a permutation and a graph) disagree on degree."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Degree mismatch: expected {expected}, got {actual}")


class InvalidPermutationError(GroupError):
    """Error when an image list is not a bijection of its domain."""

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        super().__init__(f"Not a permutation: {list(images)[:16]}")


class PointRangeError(GroupError):
    """Error when a point lies outside the permutation domain."""

    def __init__(self, point: int, degree: int):
        self.point = point
        self.degree = degree
        super().__init__(f"Point {point} outside domain of degree {degree}")


class NotAMemberError(GroupError):
    """Error when an element is expected to lie in a group but does not."""

    def __init__(self, element: object, message: str = "Element is not a member of the group"):
        self.element = element
        super().__init__(f"{message}: {element}")


class NotASubgroupError(GroupError):
    """Error when a claimed subgroup has generators outside the ambient group."""

    def __init__(self, generator: object):
        self.generator = generator
        super().__init__(f"Generator lies outside the ambient group: {generator}")


class IntransitiveGroupError(GroupError):
    """Error when an operation needs a transitive group."""

    def __init__(self, degree: int, orbit_size: int):
        self.degree = degree
        self.orbit_size = orbit_size
        super().__init__(f"Group is intransitive: orbit of size {orbit_size} on {degree} points")


class NonInvariantPartitionError(GroupError):
    """Error when a partition is not preserved by the group."""

    def __init__(self, cell: Iterable[int]):
        self.cell = tuple(sorted(cell))
        super().__init__(f"Partition is not invariant under the group: cell {list(self.cell)}")


class NotNormalError(GroupError):
    """Error when a subgroup is required to be normal and is not."""

    def __init__(self, message: str = "Subgroup is not normal"):
        super().__init__(message)


class GraphError(DihedrantsError):
    """Error raised by graph operations."""

    pass


class VertexRangeError(GraphError):
    """Error when a vertex index is outside the graph."""

    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"Vertex {vertex} outside graph on {n} vertices")


class NotAnEdgeError(GraphError):
    """Error when a pair of vertices is expected to be an edge."""

    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"Not an edge: {edge}")


class InvalidEdgeError(GraphError):
    """Error when an edge would create a loop."""

    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"Loops are not allowed: {edge}")


class OverlappingVertexSetsError(GraphError):
    """Error when two vertex sets that must be disjoint intersect."""

    def __init__(self, common: Iterable[int]):
        self.common = tuple(sorted(common))
        super().__init__(f"Vertex sets overlap in {list(self.common)}")


class DisconnectedGraphError(GraphError):
    """Error when an operation needs a connected graph."""

    def __init__(self, n: int, component_size: int):
        self.n = n
        self.component_size = component_size
        super().__init__(f"Graph is disconnected: component of size {component_size} of {n}")


class NoArcsError(GraphError):
    """Error when the graph has no s-arcs for the requested s."""

    def __init__(self, s: int):
        self.s = s
        super().__init__(f"Graph has no {s}-arcs")


class NotAnAutomorphismError(GraphError):
    """Error when a permutation fails to preserve adjacency."""

    def __init__(self, permutation: object):
        self.permutation = permutation
        super().__init__(f"Not an automorphism: {permutation}")


class CayleyError(DihedrantsError):
    """Error raised by group-element arithmetic and Cayley constructions."""

    pass


class GroupMismatchError(CayleyError):
    """Error when elements of different groups are combined."""

    def __init__(self, left: object, right: object):
        self.left = left
        self.right = right
        super().__init__(f"Elements belong to different groups: {left!r}, {right!r}")


class InvalidConnectionSetError(CayleyError):
    """Error when a connection set violates the Cayley graph conditions."""

    def __init__(self, reasons: Sequence[str], tokens: Optional[Sequence[str]] = None):
        self.reasons = tuple(reasons)
        self.tokens = tuple(tokens) if tokens is not None else ()
        detail = ", ".join(self.reasons)
        super().__init__(f"Invalid connection set ({detail}): {','.join(self.tokens)}")


class TokenError(CayleyError):
    """Error when a connection-set token cannot be parsed."""

    def __init__(self, token: str, message: str = "Cannot parse element token"):
        self.token = token
        super().__init__(f"{message}: {token!r}")


class FamilyParameterError(DihedrantsError):
    """Error when a family constructor receives parameters outside its range."""

    def __init__(self, family: str, params: Sequence[int], condition: str):
        self.family = family
        self.params = tuple(params)
        self.condition = condition
        super().__init__(f"{family}{self.params}: requires {condition}")


class SearchBudgetExceeded(DihedrantsError):
    """Error when the automorphism search visits more nodes than allowed."""

    def __init__(self, budget: int, nodes: int):
        self.budget = budget
        self.nodes = nodes
        super().__init__(
            f"Automorphism search exceeded budget of {budget:,} nodes (reached {nodes:,})"
        )


class CoverConsistencyError(DihedrantsError):
    """Internal consistency violation in the cover machinery."""

    def __init__(self, message: str):
        super().__init__(f"Cover consistency violated: {message}")


class GraphFormatError(DihedrantsError):
    """Error when a graph file cannot be parsed."""

    def __init__(self, path: Optional[Path], line: Optional[int], message: str):
        self.path = path
        self.line = line
        where = str(path) if path is not None else "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{message}: {where}")


class ConfigurationError(DihedrantsError):
    """Error when run configuration values are invalid."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"Invalid {field}: {message}")
