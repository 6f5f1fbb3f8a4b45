"""Symmetry of dihedrants: transitivity tests, cover quotients and census."""

from .version import __version__
from .core import (
    CensusOptions,
    CensusRunner,
    ConnectionSet,
    DihedrantsError,
    Graph,
    GroupSpec,
    Permutation,
    automorphism_group,
    cayley_graph,
    classify_dihedrant,
    recognize,
    symmetry_profile,
    verify_circulants,
    verify_theorem_1_1,
)
from .io import read_graph, write_graph

__all__ = [
    "__version__",
    "Graph",
    "Permutation",
    "GroupSpec",
    "ConnectionSet",
    "cayley_graph",
    "automorphism_group",
    "symmetry_profile",
    "recognize",
    "classify_dihedrant",
    "verify_theorem_1_1",
    "verify_circulants",
    "CensusRunner",
    "CensusOptions",
    "DihedrantsError",
    "read_graph",
    "write_graph",
]
