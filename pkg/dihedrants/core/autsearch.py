"""Automorphism groups and canonical labelling by partition refinement.

The search tree is the usual individualization-refinement tree: a node is
an equitable ordered partition, its children individualize one vertex of
the target cell (first smallest non-singleton cell), and leaves are
discrete partitions, read as vertex orderings.

Automorphisms are collected along the first path. At depth ``k`` the
vertices of the target cell are split into orbits of the group fixing the
first ``k`` path vertices; each vertex not yet known to be in the orbit of
the path vertex gets a subtree search for a leaf equivalent to the first
leaf. The automorphisms found this way form a strong generating set
relative to the first path, so the chain is assembled directly.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import SearchBudgetExceeded
from .graph import Graph, is_automorphism, mask_of
from .permgroup import (
    ChainLevel,
    Permutation,
    StabilizerChain,
    _transversal,
    orbits,
    pointwise_stabilizer,
)

logger = logging.getLogger(__name__)

Trace = Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]
Cells = List[List[int]]


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered cells covering ``0 .. n-1``."""

    cells: Tuple[Tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls((tuple(range(n)),) if n else ())

    @property
    def cell_of(self) -> Tuple[int, ...]:
        n = sum(len(c) for c in self.cells)
        index = [0] * n
        for i, cell in enumerate(self.cells):
            for v in cell:
                index[v] = i
        return tuple(index)

    @property
    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)


class AutomorphismGroup(NamedTuple):
    """Generators of Aut(g), their stabilizer chain, and the search effort."""

    generators: Tuple[Permutation, ...]
    chain: StabilizerChain
    nodes: int


class CanonicalLabeling(NamedTuple):
    """``labeling[k]`` is the original vertex placed at canonical position ``k``."""

    form: str
    labeling: Tuple[int, ...]
    graph: Graph


def _refine(rows: Sequence[int], cells: Cells, queue: List[int]) -> Trace:
    """Split ``cells`` in place until every queued splitter is exhausted.

    Fragments replace their parent in place, ordered by ascending neighbour
    count, and are queued as further splitters. The returned trace records
    (cell position, (count, fragment size) pairs) per split and depends
    only on the isomorphism type of the partitioned graph.
    """
    trace = []
    head = 0
    while head < len(queue):
        splitter = queue[head]
        head += 1
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) == 1:
                i += 1
                continue
            counts = [(rows[v] & splitter).bit_count() for v in cell]
            first = counts[0]
            if all(c == first for c in counts):
                i += 1
                continue
            groups: Dict[int, List[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            keys = sorted(groups)
            fragments = [groups[k] for k in keys]
            cells[i : i + 1] = fragments
            trace.append((i, tuple((k, len(groups[k])) for k in keys)))
            for fragment in fragments:
                queue.append(mask_of(fragment))
            i += len(fragments)
    return tuple(trace)


def equitable_refinement(g: Graph, pi: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable refinement of ``pi`` with deterministic cell order."""
    cells = [list(c) for c in pi.cells]
    _refine(g.rows, cells, [mask_of(c) for c in cells])
    return OrderedPartition(tuple(tuple(c) for c in cells))


def _target_cell(cells: Cells) -> int:
    best = -1
    best_size = 0
    for i, cell in enumerate(cells):
        size = len(cell)
        if size > 1 and (best == -1 or size < best_size):
            best = i
            best_size = size
    return best


class _Search:
    """Shared state of one refinement search over a single graph."""

    def __init__(self, g: Graph, budget: Optional[int]):
        self.g = g
        self.rows = g.rows
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget, self.nodes)

    def root(self) -> Tuple[Cells, Trace]:
        self.tick()
        cells: Cells = [list(range(self.g.n))] if self.g.n else []
        trace = _refine(self.rows, cells, [mask_of(c) for c in cells])
        return cells, trace

    def individualize(self, cells: Cells, target: int, w: int) -> Tuple[Cells, Trace]:
        self.tick()
        rest = [v for v in cells[target] if v != w]
        child = cells[:target] + [[w], rest] + cells[target + 1 :]
        trace = _refine(self.rows, child, [1 << w])
        return child, trace

    # automorphism group

    def automorphisms(self) -> AutomorphismGroup:
        n = self.g.n
        cells, trace = self.root()
        path_cells: List[Cells] = [cells]
        path_traces: List[Trace] = [trace]
        path_vertices: List[int] = []
        while True:
            target = _target_cell(cells)
            if target == -1:
                break
            v = cells[target][0]
            cells, trace = self.individualize(cells, target, v)
            path_vertices.append(v)
            path_cells.append(cells)
            path_traces.append(trace)
        first_leaf = [c[0] for c in cells]

        generators: List[Permutation] = []
        for depth in reversed(range(len(path_vertices))):
            node = path_cells[depth]
            target = _target_cell(node)
            fixed = path_vertices[:depth]
            stab = [g for g in generators if all(g.images[x] == x for x in fixed)]
            v = path_vertices[depth]
            known = set(_orbit(stab, v))
            rejected: set = set()
            for w in node[target]:
                if w in known or w in rejected:
                    continue
                found = self._equivalent_leaf(node, target, w, depth + 1, first_leaf, path_traces)
                if found is None:
                    rejected.update(_orbit(stab, w))
                    continue
                generators.append(found)
                stab.append(found)
                known = set(_orbit(stab, v))

        chain = _chain_from_strong_generators(n, path_vertices, generators)
        logger.debug(
            "Aut search on %d vertices: order %d, %d generators, %d nodes",
            n,
            chain.order,
            len(generators),
            self.nodes,
        )
        return AutomorphismGroup(tuple(generators), chain, self.nodes)

    def _equivalent_leaf(
        self,
        cells: Cells,
        target: int,
        w: int,
        depth: int,
        first_leaf: Sequence[int],
        first_traces: Sequence[Trace],
    ) -> Optional[Permutation]:
        child, trace = self.individualize(cells, target, w)
        if depth >= len(first_traces) or trace != first_traces[depth]:
            return None
        return self._descend(child, depth, first_leaf, first_traces)

    def _descend(
        self,
        cells: Cells,
        depth: int,
        first_leaf: Sequence[int],
        first_traces: Sequence[Trace],
    ) -> Optional[Permutation]:
        target = _target_cell(cells)
        if target == -1:
            images = [0] * len(first_leaf)
            for k, vertex in enumerate(first_leaf):
                images[vertex] = cells[k][0]
            candidate = Permutation._trusted(tuple(images))
            return candidate if is_automorphism(self.g, candidate) else None
        for x in cells[target]:
            found = self._equivalent_leaf(cells, target, x, depth + 1, first_leaf, first_traces)
            if found is not None:
                return found
        return None

    # canonical labelling

    def canonical(self, chain: StabilizerChain) -> CanonicalLabeling:
        cells, trace = self.root()
        self._best_traces: Optional[List[Trace]] = None
        self._best_form: Optional[Tuple[int, ...]] = None
        self._best_leaf: Optional[List[int]] = None
        self._explore(cells, [trace], [], chain)
        assert self._best_form is not None and self._best_leaf is not None
        rows = self._best_form
        form = f"{self.g.n}:" + ",".join(f"{r:x}" for r in rows)
        return CanonicalLabeling(form, tuple(self._best_leaf), Graph._trusted(self.g.n, rows))

    def _compare(self, traces: Sequence[Trace]) -> int:
        if self._best_traces is None:
            return 1
        for mine, theirs in zip(traces, self._best_traces):
            if mine != theirs:
                return 1 if mine > theirs else -1
        return 0

    def _leaf_form(self, leaf: Sequence[int]) -> Tuple[int, ...]:
        position = [0] * len(leaf)
        for k, v in enumerate(leaf):
            position[v] = k
        rows = self.rows
        form = []
        for v in leaf:
            row = 0
            mask = rows[v]
            while mask:
                low = mask & -mask
                row |= 1 << position[low.bit_length() - 1]
                mask ^= low
            form.append(row)
        return tuple(form)

    def _explore(
        self, cells: Cells, traces: List[Trace], path: List[int], stabilizer: StabilizerChain
    ) -> None:
        target = _target_cell(cells)
        if target == -1:
            leaf = [c[0] for c in cells]
            form = self._leaf_form(leaf)
            status = self._compare(traces)
            if status > 0 or (status == 0 and (self._best_form is None or form > self._best_form)):
                self._best_traces = list(traces)
                self._best_form = form
                self._best_leaf = leaf
            return
        candidates = cells[target]
        representatives = _orbit_representatives(stabilizer, candidates)
        for w in representatives:
            child, trace = self.individualize(cells, target, w)
            traces.append(trace)
            if self._compare(traces) >= 0:
                child_stab = stabilizer
                if not stabilizer.is_trivial:
                    child_stab = pointwise_stabilizer(stabilizer, [w])
                path.append(w)
                self._explore(child, traces, path, child_stab)
                path.pop()
            traces.pop()


def _orbit(gens: Sequence[Permutation], point: int) -> List[int]:
    found = {point}
    order = [point]
    for current in order:
        for g in gens:
            image = g.images[current]
            if image not in found:
                found.add(image)
                order.append(image)
    return order


def _orbit_representatives(chain: StabilizerChain, candidates: Iterable[int]) -> List[int]:
    cand = sorted(candidates)
    if chain.is_trivial:
        return cand
    representatives = []
    covered: set = set()
    gens = chain.strong_generators
    for w in cand:
        if w in covered:
            continue
        representatives.append(w)
        covered.update(_orbit(gens, w))
    return representatives


def _chain_from_strong_generators(
    degree: int, base: Sequence[int], generators: Sequence[Permutation]
) -> StabilizerChain:
    levels = []
    for depth, point in enumerate(base):
        fixed = base[:depth]
        level_gens = tuple(g for g in generators if all(g.images[x] == x for x in fixed))
        u, u_inv = _transversal(point, level_gens, degree)
        levels.append(
            ChainLevel(
                base_point=point,
                generators=level_gens,
                transversal=u,
                inverse_transversal=u_inv,
            )
        )
    return StabilizerChain(degree, levels)


def automorphism_group(g: Graph, budget: Optional[int] = None) -> AutomorphismGroup:
    """Generators and stabilizer chain of Aut(g).

    Args:
        g: Graph to analyse
        budget: Maximum number of search nodes, unlimited when ``None``

    Raises:
        SearchBudgetExceeded: If the search visits more than ``budget`` nodes
    """
    return _Search(g, budget).automorphisms()


def canonical_labeling(
    g: Graph, budget: Optional[int] = None, group: Optional[AutomorphismGroup] = None
) -> CanonicalLabeling:
    """Canonical ordering of the vertices of ``g``.

    The canonical leaf maximizes (refinement traces, relabelled adjacency)
    over all leaves; children in one orbit of the pointwise stabilizer of
    the current path lead to identical leaves, so only one is explored.
    """
    if group is None:
        group = automorphism_group(g, budget)
    return _Search(g, budget).canonical(group.chain)


def canonical_form(g: Graph, budget: Optional[int] = None) -> str:
    """Isomorphism-invariant adjacency encoding ``"n:row0,row1,..."`` (hex rows)."""
    return canonical_labeling(g, budget).form


def are_isomorphic(
    g1: Graph, g2: Graph, budget: Optional[int] = None
) -> Optional[Permutation]:
    """An isomorphism ``g1 -> g2`` when one exists, otherwise ``None``."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    first = canonical_labeling(g1, budget)
    second = canonical_labeling(g2, budget)
    if first.form != second.form:
        return None
    images = [0] * g1.n
    for k, vertex in enumerate(first.labeling):
        images[vertex] = second.labeling[k]
    return Permutation._trusted(tuple(images))


def automorphism_orbits(group: AutomorphismGroup) -> List[Tuple[int, ...]]:
    return orbits(list(group.generators), group.chain.degree)
