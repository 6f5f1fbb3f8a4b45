import networkx as nx
import pytest

from dihedrants.core.autsearch import automorphism_group
from dihedrants.core.cache import FormCache
from dihedrants.core.errors import FamilyParameterError
from dihedrants.core.families import (
    FAMILY_NAMES,
    FamilyLabel,
    FamilyTag,
    HadamardKind,
    build_family,
    complete,
    complete_bipartite,
    complete_bipartite_minus_matching,
    complete_multipartite,
    cycle,
    generalized_petersen,
    hadamard11,
    hypercube,
    paley,
    recognize,
)
from dihedrants.core.graph import Graph, girth, valency
from dihedrants.io.graphio import from_networkx, to_networkx


def test_builders_match_networkx():
    """Test family builders against networkx generators."""
    pairs = [
        (complete(5), nx.complete_graph(5)),
        (cycle(7), nx.cycle_graph(7)),
        (complete_bipartite(2, 3), nx.complete_bipartite_graph(2, 3)),
        (hypercube(4), nx.hypercube_graph(4)),
        (generalized_petersen(5, 2), nx.petersen_graph()),
        (paley(13), nx.paley_graph(13).to_undirected()),
        (complete_multipartite(3, 2), nx.complete_multipartite_graph(2, 2, 2)),
    ]
    for ours, theirs in pairs:
        assert nx.is_isomorphic(to_networkx(ours), nx.Graph(theirs))


def test_builder_shapes():
    """Test vertex and edge counts of the remaining families."""
    cocktail = complete_bipartite_minus_matching(5)
    assert (cocktail.n, cocktail.num_edges) == (10, 20)

    gp = generalized_petersen(8, 3)
    assert (gp.n, gp.num_edges) == (16, 24)
    assert girth(gp) == 6

    for kind, r in ((HadamardKind.INCIDENCE, 5), (HadamardKind.NON_INCIDENCE, 6)):
        g = hadamard11(kind)
        assert g.n == 22
        assert valency(g) == r


def test_hadamard_automorphism_orders():
    """Test that both H_11 graphs have automorphism group of order 1320."""
    for kind in HadamardKind:
        assert automorphism_group(hadamard11(kind)).chain.order == 1320


@pytest.mark.parametrize(
    "build,params",
    [
        (complete, (0,)),
        (cycle, (2,)),
        (paley, (7,)),
        (paley, (21,)),
        (generalized_petersen, (6, 3)),
        (complete_bipartite_minus_matching, (1,)),
    ],
)
def test_invalid_parameters(build, params):
    """Test that builders reject out-of-range parameters."""
    with pytest.raises(FamilyParameterError):
        build(*params)


@pytest.mark.parametrize(
    "g,label",
    [
        (complete(4), "K_4"),
        (cycle(5), "C_5"),
        (cycle(4), "K_{2,2}"),
        (complete_bipartite(3, 3), "K_{3,3}"),
        (complete_multipartite(3, 2), "K_{3[2]}"),
        (hypercube(3), "K_{4,4}-4K_2"),
        (complete_bipartite_minus_matching(5), "K_{5,5}-5K_2"),
        (paley(13), "P(13)"),
        (hypercube(4), "Q_4"),
        (generalized_petersen(5, 2), "P(5,2)"),
        (hadamard11(HadamardKind.INCIDENCE), "B(H_11)"),
        (hadamard11(HadamardKind.NON_INCIDENCE), "B'(H_11)"),
    ],
)
def test_recognize(g, label):
    """Test family recognition and label formatting."""
    family = recognize(g, cache=FormCache())
    assert family.recognized
    assert str(family) == label


def test_recognize_after_relabelling():
    """Test that recognition does not depend on vertex order."""
    nx_graph = nx.relabel_nodes(to_networkx(paley(13)), {v: (5 * v + 2) % 13 for v in range(13)})
    assert recognize(from_networkx(nx_graph)) == FamilyLabel(FamilyTag.PALEY, (13,))


def test_unrecognized_graphs():
    """Test that other graphs are left unlabelled."""
    wagner = Graph.from_edges(8, [(i, (i + d) % 8) for i in range(8) for d in (1, 4)])
    assert valency(wagner) == 3
    assert not recognize(wagner).recognized
    prism = recognize(generalized_petersen(3, 1))
    assert prism == FamilyLabel(FamilyTag.GENERALIZED_PETERSEN, (3, 1))
    assert str(FamilyLabel.unrecognized()) == "?"
    edge = build_family("bipartite", (1, 1))
    assert recognize(edge) == FamilyLabel(FamilyTag.COMPLETE, (2,))


def test_recognition_cache_is_reused():
    """Test that candidate forms are computed once per label."""
    cache = FormCache()
    recognize(paley(13), cache=cache)
    size = len(cache)
    form = cache.get(FamilyLabel(FamilyTag.PALEY, (13,)))
    assert form is not None
    recognize(paley(13), cache=cache)
    assert len(cache) == size
    assert cache.get(FamilyLabel(FamilyTag.PALEY, (13,))) == form


def test_build_family():
    """Test building by CLI family name."""
    assert set(FAMILY_NAMES) >= {"paley", "gp", "h11", "h11bar", "cube"}
    assert build_family("paley", (13,)).num_edges == 39
    assert build_family("h11", ()).n == 22
    with pytest.raises(FamilyParameterError):
        build_family("paley", (13, 1))
    with pytest.raises(FamilyParameterError):
        build_family("petersen", ())
    with pytest.raises(FamilyParameterError):
        build_family("h11", (1,))
