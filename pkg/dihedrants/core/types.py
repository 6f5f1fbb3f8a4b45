"""Type definitions for census runs and their records."""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import ConfigurationError
from .families import FamilyLabel
from .symmetry import SymmetryProfile


class OutputFormat(Enum):
    TABLE = "table"
    RECORDS = "records"


class VerifyTarget(Enum):
    """Census harnesses exposed by ``dihedrants verify``."""

    THEOREM11 = "theorem11"
    CIRCULANTS = "circulants"
    LEMMA41 = "lemma41"

    @property
    def default_range(self) -> Tuple[int, int]:
        return (3, 20) if self is VerifyTarget.CIRCULANTS else (2, 10)

    @property
    def min_n(self) -> int:
        return 3 if self is VerifyTarget.CIRCULANTS else 2


class TheoremClass(Enum):
    """Where a record lands in the classification."""

    TWO_ARC_TRANSITIVE = "two_arc_transitive"
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    PALEY = "paley"
    NOT_TWO_DISTANCE_TRANSITIVE = "not_two_distance_transitive"
    COUNTEREXAMPLE = "counterexample"
    SKIPPED = "skipped"


class CoverBranch(Enum):
    """Outcome of the cover dichotomy for one kernel ``N``."""

    TRIVIAL_KERNEL = "trivial_kernel"
    NOT_A_COVER = "not_a_cover"
    ROTATION_SUBGROUP = "rotation_subgroup"  # N < R(H)
    INDEX_TWO = "index_two"  # |N : N cap R(H)| = 2
    VIOLATION = "violation"


class RunVerdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class CoverInstance:
    """Kernel of ``Aut`` on one block system, and what its quotient looks like."""

    block_count: int
    block_size: int
    kernel_order: int
    branch: CoverBranch
    is_cover: bool = False
    rotation_part: Optional[int] = None  # |N cap R(H)|
    square_index: Optional[int] = None  # |N : <g^2 : g in N>|
    kernel_matches: Optional[bool] = None
    quotient_two_arc: Optional[bool] = None
    quotient_two_distance: Optional[bool] = None
    quotient_family: Optional[FamilyLabel] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "block_count": self.block_count,
            "block_size": self.block_size,
            "kernel_order": self.kernel_order,
            "branch": self.branch.value,
            "is_cover": self.is_cover,
            "rotation_part": self.rotation_part,
            "square_index": self.square_index,
            "kernel_matches": self.kernel_matches,
            "quotient_two_arc": self.quotient_two_arc,
            "quotient_two_distance": self.quotient_two_distance,
            "quotient_family": str(self.quotient_family) if self.quotient_family else None,
        }


@dataclass(frozen=True)
class ClassificationRecord:
    """One census row: a connection set and everything computed from it."""

    n: int
    group: str  # "D" or "Z"
    tokens: Tuple[str, ...]
    theorem_class: TheoremClass
    valency: int = 0
    girth: Optional[int] = None  # None for forests
    diameter: Optional[int] = None
    bipartite: bool = False
    aut_order: Optional[int] = None
    profile: Optional[SymmetryProfile] = None
    family: Optional[FamilyLabel] = None
    covers: Tuple[CoverInstance, ...] = ()
    quasiprimitive: Optional[str] = None
    canonical_form: Optional[str] = None
    layer_edges: Optional[int] = None  # edges between Gamma(u) and Gamma_2(u)
    skip_reason: Optional[str] = None

    @property
    def connection_set(self) -> str:
        return ",".join(self.tokens)

    @property
    def sort_key(self) -> Tuple[int, str]:
        return self.n, self.connection_set

    @property
    def order(self) -> int:
        """Number of vertices."""
        return 2 * self.n if self.group == "D" else self.n

    @property
    def is_skipped(self) -> bool:
        return self.theorem_class is TheoremClass.SKIPPED

    def to_dict(self) -> Dict[str, object]:
        result: Dict[str, object] = {
            "n": self.n,
            "group": self.group,
            "connection_set": list(self.tokens),
            "theorem_class": self.theorem_class.value,
        }
        if self.is_skipped:
            result["skipped"] = self.skip_reason
            return result
        result.update(
            {
                "valency": self.valency,
                "girth": self.girth,
                "diameter": self.diameter,
                "bipartite": self.bipartite,
                "aut_order": self.aut_order,
                "profile": self.profile.to_dict() if self.profile else None,
                "family": str(self.family) if self.family else None,
                "covers": [c.to_dict() for c in self.covers],
                "quasiprimitive": self.quasiprimitive,
                "layer_edges": self.layer_edges,
            }
        )
        if self.canonical_form is not None:
            result["canonical_form"] = self.canonical_form
        return result


@dataclass
class CensusOptions:
    """Configuration options for census runs."""

    budget: Optional[int] = 10_000_000  # search nodes per graph; None for unlimited
    jobs: int = 1
    allow_skips: bool = False
    dedup_isomorphic: bool = False
    check_covers: bool = True
    quasiprimitive_cap: int = 10**5

    def __post_init__(self) -> None:
        """Validate option values."""
        if self.budget is not None and self.budget < 1:
            raise ConfigurationError("budget", f"must be positive, got {self.budget}")
        if self.jobs < 1:
            raise ConfigurationError("jobs", f"must be at least 1, got {self.jobs}")
        if self.quasiprimitive_cap < 1:
            raise ConfigurationError(
                "quasiprimitive_cap", f"must be positive, got {self.quasiprimitive_cap}"
            )


@dataclass
class RunConfig:
    """A fully resolved ``verify`` invocation."""

    target: VerifyTarget
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.TABLE
    options: CensusOptions = field(default_factory=CensusOptions)

    def __post_init__(self) -> None:
        """Fill the target's default range and validate it."""
        low, high = self.target.default_range
        if self.n_min is None:
            self.n_min = max(low, self.target.min_n)
        if self.n_max is None:
            self.n_max = max(high, self.n_min)
        if self.n_min < self.target.min_n:
            raise ConfigurationError(
                "min-n", f"{self.target.value} needs n >= {self.target.min_n}, got {self.n_min}"
            )
        if self.n_min > self.n_max:
            raise ConfigurationError("n-range", f"empty range {self.n_min}..{self.n_max}")


@dataclass
class LemmaReport:
    """Cover-dichotomy tally over a record stream."""

    instances: int = 0
    branch_counts: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "instances": self.instances,
            "branch_counts": dict(sorted(self.branch_counts.items())),
            "violations": list(self.violations),
        }


@dataclass
class CensusReport:
    """Records of one census run plus everything derived from them."""

    target: VerifyTarget
    n_min: int
    n_max: int
    records: List[ClassificationRecord]
    violations: List[str] = field(default_factory=list)
    lemma: Optional[LemmaReport] = None
    isomorphism_counts: Optional[Dict[int, int]] = None
    allow_skips: bool = False
    elapsed: float = 0.0  # seconds; console only
    peak_memory: int = 0  # bytes; console only

    @property
    def counts_per_n(self) -> Dict[int, Dict[str, int]]:
        counts: Dict[int, Dict[str, int]] = {}
        for record in self.records:
            per_n = counts.setdefault(record.n, {})
            key = record.theorem_class.value
            per_n[key] = per_n.get(key, 0) + 1
        return {n: dict(sorted(c.items())) for n, c in sorted(counts.items())}

    @property
    def counts_per_class(self) -> Dict[str, int]:
        totals: Dict[str, int] = {}
        for record in self.records:
            key = record.theorem_class.value
            totals[key] = totals.get(key, 0) + 1
        return dict(sorted(totals.items()))

    @property
    def skipped(self) -> List[ClassificationRecord]:
        return [r for r in self.records if r.is_skipped]

    @property
    def counterexamples(self) -> List[ClassificationRecord]:
        return [r for r in self.records if r.theorem_class is TheoremClass.COUNTEREXAMPLE]

    @property
    def verdict(self) -> RunVerdict:
        failed = bool(self.counterexamples or self.violations)
        if self.lemma is not None and self.lemma.violations:
            failed = True
        if self.skipped and not self.allow_skips:
            failed = True
        return RunVerdict.FAIL if failed else RunVerdict.PASS

    def summary(self) -> Dict[str, object]:
        result: Dict[str, object] = {
            "target": self.target.value,
            "n_range": [self.n_min, self.n_max],
            "records": len(self.records),
            "counts_per_class": self.counts_per_class,
            "counts_per_n": {str(n): c for n, c in self.counts_per_n.items()},
            "skipped": [f"{r.group}{r.n} {{{r.connection_set}}}" for r in self.skipped],
            "violations": list(self.violations),
            "verdict": self.verdict.value,
        }
        if self.lemma is not None:
            result["lemma_4_1"] = self.lemma.to_dict()
        if self.isomorphism_counts is not None:
            result["isomorphism_classes"] = {
                str(n): c for n, c in sorted(self.isomorphism_counts.items())
            }
        return result
