"""Permutation groups, graphs and the dihedrant census."""

from .autsearch import (
    AutomorphismGroup,
    CanonicalLabeling,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    canonical_labeling,
)
from .cayley import (
    ConnectionSet,
    CyclicElement,
    DihedralElement,
    EnumerationMode,
    GroupKind,
    GroupSpec,
    cayley_graph,
    enumerate_connection_sets,
    is_normal_cayley,
    validate_connection_set,
)
from .census import (
    CensusRunner,
    check_lemma_4_1,
    check_properties,
    classify_dihedrant,
    verify_circulants,
    verify_theorem_1_1,
)
from .errors import (
    CayleyError,
    ConfigurationError,
    DihedrantsError,
    DisconnectedGraphError,
    FamilyParameterError,
    GraphError,
    GraphFormatError,
    GroupError,
    SearchBudgetExceeded,
)
from .families import FamilyLabel, FamilyTag, build_family, recognize
from .graph import Graph, distance_partition
from .permgroup import Permutation, StabilizerChain, schreier_sims
from .symmetry import SymmetryProfile, quotient, symmetry_profile
from .types import (
    CensusOptions,
    CensusReport,
    ClassificationRecord,
    RunConfig,
    TheoremClass,
    VerifyTarget,
)

__all__ = [
    # Groups and graphs
    "Permutation",
    "StabilizerChain",
    "schreier_sims",
    "Graph",
    "distance_partition",
    "AutomorphismGroup",
    "CanonicalLabeling",
    "automorphism_group",
    "canonical_labeling",
    "canonical_form",
    "are_isomorphic",
    # Cayley graphs
    "GroupKind",
    "GroupSpec",
    "CyclicElement",
    "DihedralElement",
    "ConnectionSet",
    "EnumerationMode",
    "cayley_graph",
    "enumerate_connection_sets",
    "is_normal_cayley",
    "validate_connection_set",
    # Families and symmetry
    "FamilyLabel",
    "FamilyTag",
    "build_family",
    "recognize",
    "SymmetryProfile",
    "symmetry_profile",
    "quotient",
    # Census
    "CensusRunner",
    "CensusOptions",
    "CensusReport",
    "ClassificationRecord",
    "RunConfig",
    "TheoremClass",
    "VerifyTarget",
    "classify_dihedrant",
    "verify_theorem_1_1",
    "verify_circulants",
    "check_lemma_4_1",
    "check_properties",
    # Errors
    "DihedrantsError",
    "GroupError",
    "GraphError",
    "CayleyError",
    "DisconnectedGraphError",
    "FamilyParameterError",
    "SearchBudgetExceeded",
    "GraphFormatError",
    "ConfigurationError",
]
