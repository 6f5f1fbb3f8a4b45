"""Transitivity properties of graphs under a group of automorphisms.

Every check takes the graph and a stabilizer chain ``X`` for a group of
automorphisms. "For one (hence every) vertex" reductions are only used
after vertex-transitivity has been established; otherwise one vertex per
``X``-orbit is examined.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import (
    CoverConsistencyError,
    DisconnectedGraphError,
    NoArcsError,
    NotAnAutomorphismError,
    NotNormalError,
)
from .graph import Graph, distance_partition, is_automorphism, mask_of
from .permgroup import (
    Permutation,
    StabilizerChain,
    _orbit_list,
    is_normal_subgroup,
    is_semiregular,
    is_transitive,
    orbits,
    point_stabilizer,
    schreier_sims,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetryProfile:
    """Transitivity flags of a graph under ``X``.

    ``s_distance_transitive[s - 1]`` is the flag for ``s = 1 .. diameter``;
    ``layer_sizes`` are ``|Gamma_i(u)|`` around vertex 0.
    """

    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    two_arc_transitive: bool
    s_distance_transitive: Tuple[bool, ...]
    two_distance_transitive: bool
    distance_transitive: bool
    two_geodesic_transitive: bool
    locally_two_distance_transitive: bool
    group_order: int
    stabilizer_order: int
    layer_sizes: Tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertex_transitive": self.vertex_transitive,
            "edge_transitive": self.edge_transitive,
            "arc_transitive": self.arc_transitive,
            "two_arc_transitive": self.two_arc_transitive,
            "s_distance_transitive": list(self.s_distance_transitive),
            "two_distance_transitive": self.two_distance_transitive,
            "distance_transitive": self.distance_transitive,
            "two_geodesic_transitive": self.two_geodesic_transitive,
            "locally_two_distance_transitive": self.locally_two_distance_transitive,
            "group_order": self.group_order,
            "stabilizer_order": self.stabilizer_order,
            "layer_sizes": list(self.layer_sizes),
        }


@dataclass(frozen=True)
class QuotientResult:
    """``Gamma_N``: orbits of ``N`` as vertices, joined when an edge crosses."""

    quotient: Graph
    orbit_map: Tuple[int, ...]
    orbits: Tuple[Tuple[int, ...], ...]
    is_cover: bool
    kernel_order: int


def check_automorphisms(g: Graph, x: StabilizerChain) -> None:
    """Raise unless every strong generator of ``X`` is an automorphism of ``g``.

    Raises:
        NotAnAutomorphismError: For the first offending generator
    """
    for p in x.strong_generators:
        if not is_automorphism(g, p):
            raise NotAnAutomorphismError(p)


def _in_one_orbit(gens: Sequence[Permutation], points: int) -> bool:
    """True iff the vertex set ``points`` (a bitmask) lies in a single orbit."""
    if points & (points - 1) == 0:
        return True
    start = (points & -points).bit_length() - 1
    reached = mask_of(_orbit_list(gens, start))
    return points & ~reached == 0


def _layer_flags(g: Graph, stabilizer: StabilizerChain, u: int) -> List[bool]:
    """Per distance layer around ``u``: is it a single ``X_u``-orbit?"""
    gens = stabilizer.strong_generators
    dp = distance_partition(g, u)
    return [_in_one_orbit(gens, cell) for cell in dp.cells]


def _require_connected(g: Graph) -> None:
    if g.n == 0:
        return
    dp = distance_partition(g, 0)
    if dp.unreachable:
        raise DisconnectedGraphError(g.n, g.n - dp.unreachable.bit_count())


def is_vertex_transitive(g: Graph, x: StabilizerChain) -> bool:
    check_automorphisms(g, x)
    return is_transitive(x.strong_generators, g.n)


def is_edge_transitive(g: Graph, x: StabilizerChain) -> bool:
    """Single ``X``-orbit on unordered edges; vacuously true without edges."""
    check_automorphisms(g, x)
    edges = list(g.edges())
    if not edges:
        return True
    gens = x.strong_generators
    start: FrozenSet[int] = frozenset(edges[0])
    seen = {start}
    queue = [start]
    for current in queue:
        a, b = tuple(current)
        for p in gens:
            image = frozenset((p.images[a], p.images[b]))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen) == len(edges)


def is_arc_transitive(g: Graph, x: StabilizerChain) -> bool:
    if not is_vertex_transitive(g, x):
        return False
    if g.n == 0:
        return True
    stabilizer = point_stabilizer(x, 0)
    return _in_one_orbit(stabilizer.strong_generators, g.rows[0])


def _has_two_arcs(g: Graph) -> bool:
    return any(row.bit_count() >= 2 for row in g.rows)


def is_s_arc_transitive(g: Graph, x: StabilizerChain, s: int) -> bool:
    """``(X, s)``-arc transitivity for ``s`` in ``{1, 2}``.

    Raises:
        NoArcsError: If ``g`` has no ``s``-arcs
        ValueError: If ``s`` is not 1 or 2
    """
    if s not in (1, 2):
        raise ValueError(f"s-arc transitivity is supported for s = 1, 2 only, got {s}")
    if s == 1:
        if g.num_edges == 0:
            raise NoArcsError(1)
        return is_arc_transitive(g, x)
    if not _has_two_arcs(g):
        raise NoArcsError(2)
    if not is_arc_transitive(g, x):
        return False
    u = 0
    v = (g.rows[u] & -g.rows[u]).bit_length() - 1
    x_u = point_stabilizer(x, u)
    x_uv = point_stabilizer(x_u, v)
    return _in_one_orbit(x_uv.strong_generators, g.rows[v] & ~(1 << u))


def is_s_distance_transitive(g: Graph, x: StabilizerChain, s: int) -> bool:
    """Vertex-transitive with ``X_u`` transitive on ``Gamma_i(u)`` for ``i <= s``.

    Layers beyond the eccentricity are empty and count as satisfied.

    Raises:
        DisconnectedGraphError: If ``g`` is disconnected
    """
    _require_connected(g)
    if not is_vertex_transitive(g, x):
        return False
    if g.n == 0:
        return True
    flags = _layer_flags(g, point_stabilizer(x, 0), 0)
    return all(flags[1 : s + 1])


def is_locally_s_distance_transitive(g: Graph, x: StabilizerChain, s: int) -> bool:
    """The layer condition at one vertex of every ``X``-orbit."""
    check_automorphisms(g, x)
    for orbit in orbits(list(x.strong_generators), g.n):
        u = orbit[0]
        flags = _layer_flags(g, point_stabilizer(x, u), u)
        if not all(flags[1 : s + 1]):
            return False
    return True


def is_distance_transitive(g: Graph, x: StabilizerChain) -> bool:
    _require_connected(g)
    if g.n == 0:
        return True
    eccentricity = distance_partition(g, 0).eccentricity
    return is_s_distance_transitive(g, x, max(eccentricity, 1))


def is_two_geodesic_transitive(g: Graph, x: StabilizerChain) -> bool:
    """Arc-transitive with ``X_uv`` transitive on the 2-geodesics ``(u, v, w)``."""
    if not is_arc_transitive(g, x):
        return False
    if g.num_edges == 0:
        return True
    u = 0
    v = (g.rows[u] & -g.rows[u]).bit_length() - 1
    targets = g.rows[v] & ~g.rows[u] & ~(1 << u)
    x_uv = point_stabilizer(point_stabilizer(x, u), v)
    return _in_one_orbit(x_uv.strong_generators, targets)


def symmetry_profile(g: Graph, x: StabilizerChain) -> SymmetryProfile:
    """All transitivity flags of ``g`` under ``X`` with shared stabilizers.

    Raises:
        DisconnectedGraphError: If ``g`` is disconnected
    """
    _require_connected(g)
    check_automorphisms(g, x)
    n = g.n
    vt = is_transitive(x.strong_generators, n)
    dp = distance_partition(g, 0)
    x_u = point_stabilizer(x, 0)
    flags = _layer_flags(g, x_u, 0)
    diameter = dp.eccentricity
    s_flags = tuple(vt and all(flags[1 : s + 1]) for s in range(1, diameter + 1))
    two_distance = vt and all(flags[1:3])
    arc = (vt and flags[1]) if len(flags) > 1 else vt

    two_arc = arc
    two_geodesic = arc
    if arc and g.num_edges:
        v = (g.rows[0] & -g.rows[0]).bit_length() - 1
        x_uv = point_stabilizer(x_u, v)
        gens = x_uv.strong_generators
        if _has_two_arcs(g):
            two_arc = _in_one_orbit(gens, g.rows[v] & ~1)
        two_geodesic = _in_one_orbit(gens, g.rows[v] & ~g.rows[0] & ~1)

    if vt:
        locally = two_distance
    else:
        locally = is_locally_s_distance_transitive(g, x, 2)

    profile = SymmetryProfile(
        vertex_transitive=vt,
        edge_transitive=is_edge_transitive(g, x),
        arc_transitive=arc,
        two_arc_transitive=two_arc,
        s_distance_transitive=s_flags,
        two_distance_transitive=two_distance,
        distance_transitive=vt and all(flags[1:]),
        two_geodesic_transitive=two_geodesic,
        locally_two_distance_transitive=locally,
        group_order=x.order,
        stabilizer_order=x_u.order,
        layer_sizes=dp.sizes,
    )
    logger.debug("Profile on %d vertices, |X| = %d: %s", n, x.order, profile)
    return profile


def quotient(g: Graph, x: StabilizerChain, normal: StabilizerChain) -> QuotientResult:
    """Quotient of ``g`` by the orbits of a normal subgroup ``N`` of ``X``.

    Raises:
        NotASubgroupError: If a generator of ``N`` is outside ``X``
        NotNormalError: If ``N`` is not normal in ``X``
        CoverConsistencyError: If ``g`` is an ``N``-cover but ``N`` is not semiregular
    """
    check_automorphisms(g, x)
    if not is_normal_subgroup(x, normal):
        raise NotNormalError("N is not normal in X")
    parts = tuple(orbits(list(normal.strong_generators), g.n))
    orbit_map = [0] * g.n
    for index, part in enumerate(parts):
        for v in part:
            orbit_map[v] = index
    rows = [0] * len(parts)
    for u, v in g.edges():
        a, b = orbit_map[u], orbit_map[v]
        if a != b:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
    q = Graph._trusted(len(parts), rows)
    is_cover = all(
        g.rows[v].bit_count() == rows[orbit_map[v]].bit_count() for v in range(g.n)
    )
    if is_cover and not is_semiregular(normal):
        raise CoverConsistencyError("cover by a subgroup that is not semiregular")
    return QuotientResult(
        quotient=q,
        orbit_map=tuple(orbit_map),
        orbits=parts,
        is_cover=is_cover,
        kernel_order=normal.order,
    )


def induced_quotient_action(x: StabilizerChain, result: QuotientResult) -> StabilizerChain:
    """Chain for the action of ``X`` on the ``N``-orbits.

    The action need not be faithful; its kernel is whatever fixes every orbit.
    """
    gens = []
    for p in x.strong_generators:
        images = tuple(result.orbit_map[p.images[part[0]]] for part in result.orbits)
        gens.append(Permutation(images))
    return schreier_sims(gens, degree=len(result.orbits))


def subgroup_from_generators(g: Graph, generators: Sequence[Permutation]) -> StabilizerChain:
    """Chain for the group generated by ``generators``, each checked against ``g``.

    Raises:
        NotAnAutomorphismError: If a generator does not preserve adjacency
    """
    for p in generators:
        if not is_automorphism(g, p):
            raise NotAnAutomorphismError(p)
    return schreier_sims(list(generators), degree=g.n)

