import itertools
import random

import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from dihedrants.core.autsearch import (
    OrderedPartition,
    are_isomorphic,
    automorphism_group,
    automorphism_orbits,
    canonical_form,
    canonical_labeling,
    equitable_refinement,
)
from dihedrants.core.cayley import GroupSpec, cayley_graph, enumerate_connection_sets
from dihedrants.core.errors import SearchBudgetExceeded
from dihedrants.core.families import (
    complete,
    complete_bipartite,
    complete_bipartite_minus_matching,
    complete_multipartite,
    cycle,
    generalized_petersen,
    hypercube,
    paley,
)
from dihedrants.core.graph import Graph, apply_permutation, is_automorphism
from dihedrants.core.permgroup import Permutation
from dihedrants.io.graphio import to_networkx


def _shuffled(g, seed):
    rng = random.Random(seed)
    images = list(range(g.n))
    rng.shuffle(images)
    return apply_permutation(g, Permutation(images))


@pytest.mark.parametrize(
    "g,order",
    [
        (cycle(6), 12),
        (complete(4), 24),
        (hypercube(3), 48),
        (complete_multipartite(3, 2), 48),
        (generalized_petersen(5, 2), 120),
        (paley(13), 78),
        (generalized_petersen(8, 3), 96),
        (Graph.empty(3), 6),
    ],
)
def test_automorphism_group_order(g, order):
    """Test |Aut| of well-known graphs."""
    aut = automorphism_group(g)
    assert aut.chain.order == order
    for p in aut.generators:
        assert is_automorphism(g, p)


@pytest.mark.parametrize("g", [cycle(7), hypercube(3), generalized_petersen(5, 2)])
def test_automorphism_order_matches_networkx(g):
    """Test |Aut| against counting self-isomorphisms with networkx."""
    oracle = to_networkx(g)
    expected = sum(1 for _ in GraphMatcher(oracle, oracle).isomorphisms_iter())
    assert automorphism_group(g).chain.order == expected


def test_irregular_graph_orbits():
    """Test orbits of a path, whose only symmetry is the reversal."""
    path = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    aut = automorphism_group(path)
    assert aut.chain.order == 2
    assert automorphism_orbits(aut) == [(0, 4), (1, 3), (2,)]


def _is_equitable(g, cells):
    for target in cells:
        for cell in cells:
            if len({sum(1 for w in target if g.has_edge(v, w)) for v in cell}) > 1:
                return False
    return True


def test_equitable_refinement():
    """Test refinement of the unit partition of a path and a regular graph."""
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    refined = equitable_refinement(path, OrderedPartition.unit(4))
    assert _is_equitable(path, refined.cells)
    assert sorted(sorted(c) for c in refined.cells) == [[0, 3], [1, 2]]

    regular = equitable_refinement(cycle(5), OrderedPartition.unit(5))
    assert regular.cells == ((0, 1, 2, 3, 4),)
    assert not regular.is_discrete


@pytest.mark.parametrize(
    "g", [paley(13), generalized_petersen(8, 3), complete_multipartite(3, 2), cycle(9)]
)
def test_canonical_form_is_invariant(g):
    """Test that relabelled copies share one canonical form."""
    form = canonical_form(g)
    for seed in range(3):
        assert canonical_form(_shuffled(g, seed)) == form


def test_canonical_labeling_reproduces_form():
    """Test that the labelled graph matches the canonical labelling."""
    g = generalized_petersen(5, 2)
    labeling = canonical_labeling(g)
    assert sorted(labeling.labeling) == list(range(10))
    assert labeling.graph.num_edges == g.num_edges
    assert canonical_form(labeling.graph) == labeling.form


def test_are_isomorphic():
    """Test that the returned map is an isomorphism, or None."""
    g = generalized_petersen(8, 3)
    h = _shuffled(g, 11)
    iso = are_isomorphic(g, h)
    assert iso is not None
    assert apply_permutation(g, iso) == h

    assert are_isomorphic(generalized_petersen(5, 2), generalized_petersen(5, 1)) is None
    assert are_isomorphic(cycle(6), cycle(5)) is None


def test_search_budget():
    """Test that the node budget aborts the search."""
    with pytest.raises(SearchBudgetExceeded) as excinfo:
        automorphism_group(hypercube(3), budget=1)
    assert excinfo.value.budget == 1
    assert excinfo.value.nodes == 2
    assert "reached 2" in str(excinfo.value)
    assert automorphism_group(hypercube(3), budget=10_000).chain.order == 48


def _brute_force_aut_count(g):
    edges = list(g.edges())
    return sum(
        1
        for images in itertools.permutations(range(g.n))
        if all(g.has_edge(images[u], images[v]) for u, v in edges)
    )


def _random_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    p = rng.uniform(0.2, 0.8)
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def _small_corpus():
    graphs = [Graph.empty(4), complete_multipartite(3, 2), hypercube(3)]
    graphs += [complete(k) for k in range(1, 9)]
    graphs += [cycle(k) for k in range(3, 9)]
    graphs += [complete_bipartite(a, b) for a in range(1, 5) for b in range(a, 9 - a)]
    graphs += [complete_bipartite_minus_matching(k) for k in range(2, 5)]
    for n in range(2, 5):
        graphs += [cayley_graph(s) for s in enumerate_connection_sets(GroupSpec.dihedral(n))]
    for n in range(3, 9):
        graphs += [cayley_graph(s) for s in enumerate_connection_sets(GroupSpec.cyclic(n))]
    return graphs


@pytest.mark.slow
def test_automorphism_order_matches_brute_force():
    """Test |Aut| against all n! relabelings on small and random graphs."""
    graphs = _small_corpus() + [_random_graph(seed) for seed in range(200)]
    for g in graphs:
        assert automorphism_group(g).chain.order == _brute_force_aut_count(g), g.rows


@pytest.mark.slow
def test_canonical_form_survives_relabelings():
    """Test the canonical form under 100 random relabelings per graph."""
    graphs = _small_corpus() + [_random_graph(seed) for seed in range(200)]
    for index, g in enumerate(graphs):
        form = canonical_form(g)
        for k in range(100):
            assert canonical_form(_shuffled(g, 1000 * index + k)) == form, g.rows
