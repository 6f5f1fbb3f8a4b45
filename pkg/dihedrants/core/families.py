"""Named graph families and structural recognition."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

from sympy import isprime

from .autsearch import canonical_form
from .cache import FormCache
from .errors import FamilyParameterError
from .graph import Graph, complement, is_bipartite, is_connected, iter_bits, valency

logger = logging.getLogger(__name__)

# Point set of the 2-(11,5,2) biplane: the quadratic residues mod 11.
HADAMARD11_BASE_BLOCK = (1, 3, 4, 5, 9)


class FamilyTag(Enum):
    """Recognized graph families."""

    COMPLETE = "complete"
    CYCLE = "cycle"
    COMPLETE_BIPARTITE = "complete_bipartite"
    COMPLETE_BIPARTITE_MINUS_MATCHING = "complete_bipartite_minus_matching"
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    PALEY = "paley"
    INCIDENCE_H11 = "incidence_h11"
    NON_INCIDENCE_H11 = "non_incidence_h11"
    HYPERCUBE = "hypercube"
    GENERALIZED_PETERSEN = "generalized_petersen"
    UNRECOGNIZED = "unrecognized"


_LABEL_FORMATS = {
    FamilyTag.COMPLETE: "K_{}",
    FamilyTag.CYCLE: "C_{}",
    FamilyTag.COMPLETE_BIPARTITE: "K_{{{},{}}}",
    FamilyTag.COMPLETE_MULTIPARTITE: "K_{{{}[{}]}}",
    FamilyTag.PALEY: "P({})",
    FamilyTag.INCIDENCE_H11: "B(H_11)",
    FamilyTag.NON_INCIDENCE_H11: "B'(H_11)",
    FamilyTag.HYPERCUBE: "Q_{}",
    FamilyTag.GENERALIZED_PETERSEN: "P({},{})",
    FamilyTag.UNRECOGNIZED: "?",
}


@dataclass(frozen=True)
class FamilyLabel:
    """A family tag with its parameters."""

    tag: FamilyTag
    params: Tuple[int, ...] = ()

    @classmethod
    def unrecognized(cls) -> "FamilyLabel":
        return cls(FamilyTag.UNRECOGNIZED)

    @property
    def recognized(self) -> bool:
        return self.tag is not FamilyTag.UNRECOGNIZED

    def __str__(self) -> str:
        if self.tag is FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING:
            k = self.params[0]
            return f"K_{{{k},{k}}}-{k}K_2"
        return _LABEL_FORMATS[self.tag].format(*self.params)


class HadamardKind(Enum):
    INCIDENCE = "incidence"
    NON_INCIDENCE = "non_incidence"


def _require(ok: bool, family: str, params: Tuple[int, ...], condition: str) -> None:
    if not ok:
        raise FamilyParameterError(family, params, condition)


def complete(n: int) -> Graph:
    _require(n >= 1, "complete", (n,), "n >= 1")
    everything = (1 << n) - 1
    return Graph._trusted(n, [everything & ~(1 << v) for v in range(n)])


def cycle(n: int) -> Graph:
    _require(n >= 3, "cycle", (n,), "n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0 .. a-1`` and ``a .. a+b-1``."""
    _require(a >= 1 and b >= 1, "complete_bipartite", (a, b), "a >= 1 and b >= 1")
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    return Graph._trusted(a + b, [right] * a + [left] * b)


def complete_bipartite_minus_matching(n: int) -> Graph:
    """``K_{n,n}`` minus the matching ``{i, n+i}``."""
    _require(n >= 2, "complete_bipartite_minus_matching", (n,), "n >= 2")
    left = (1 << n) - 1
    right = left << n
    rows = [right & ~(1 << (n + i)) for i in range(n)]
    rows += [left & ~(1 << i) for i in range(n)]
    return Graph._trusted(2 * n, rows)


def complete_multipartite(m: int, b: int) -> Graph:
    """``K_{m[b]}``: part ``k`` holds vertices ``k*b .. k*b+b-1``."""
    _require(m >= 1 and b >= 1, "complete_multipartite", (m, b), "m >= 1 and b >= 1")
    n = m * b
    everything = (1 << n) - 1
    part = (1 << b) - 1
    return Graph._trusted(n, [everything & ~(part << (v // b * b)) for v in range(n)])


def hypercube(d: int) -> Graph:
    _require(d >= 1, "hypercube", (d,), "d >= 1")
    n = 1 << d
    return Graph._trusted(n, [sum(1 << (v ^ (1 << i)) for i in range(d)) for v in range(n)])


def generalized_petersen(n: int, k: int) -> Graph:
    """Outer cycle ``0 .. n-1``, spokes ``i ~ n+i``, inner edges ``n+i ~ n+(i+k)``."""
    _require(n >= 3 and 1 <= k < n / 2, "generalized_petersen", (n, k), "n >= 3, 1 <= k < n/2")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph.from_edges(2 * n, edges)


def paley(p: int) -> Graph:
    """``P(p)``: ``i ~ j`` iff ``i - j`` is a nonzero square mod ``p``."""
    _require(bool(isprime(p)) and p % 4 == 1, "paley", (p,), "p prime with p = 1 (mod 4)")
    squares = {(x * x) % p for x in range(1, p)}
    rows = []
    for i in range(p):
        rows.append(sum(1 << ((i + s) % p) for s in squares))
    return Graph._trusted(p, rows)


def hadamard11(kind: HadamardKind = HadamardKind.INCIDENCE) -> Graph:
    """Points ``0 .. 10`` then blocks ``11 .. 21`` of the 2-(11,5,2) design.

    Block ``j`` is the translate ``{q + j}`` of the quadratic residues.
    """
    rows = [0] * 22
    for j in range(11):
        block = {(q + j) % 11 for q in HADAMARD11_BASE_BLOCK}
        for point in range(11):
            joined = point in block
            if kind is HadamardKind.NON_INCIDENCE:
                joined = not joined
            if joined:
                rows[point] |= 1 << (11 + j)
                rows[11 + j] |= 1 << point
    return Graph._trusted(22, rows)


_DEFAULT_CACHE = FormCache()


def _candidate_form(label: FamilyLabel, build: Callable[[], Graph], cache: FormCache) -> str:
    return cache.get_or_compute(label, lambda: canonical_form(build()))


def _multipartite_shape(g: Graph) -> Optional[Tuple[int, int]]:
    """``(m, b)`` when the complement is ``m`` disjoint copies of ``K_b``."""
    co = complement(g)
    size = None
    seen = 0
    parts = 0
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        closed = co.rows[v] | (1 << v)
        for w in iter_bits(closed):
            if (co.rows[w] | (1 << w)) != closed:
                return None
        part_size = closed.bit_count()
        if size is None:
            size = part_size
        elif size != part_size:
            return None
        seen |= closed
        parts += 1
    if size is None:
        return None
    return parts, size


def _is_bipartite_minus_matching(
    g: Graph, sides: Tuple[Tuple[int, ...], Tuple[int, ...]]
) -> Optional[int]:
    a_side, b_side = sides
    k = len(a_side)
    if len(b_side) != k or valency(g) != k - 1:
        return None
    return k


def recognize(
    g: Graph, form: Optional[str] = None, cache: Optional[FormCache] = None
) -> FamilyLabel:
    """Name the family of ``g``.

    Direct tests come first (complete, complete bipartite, complete
    multipartite with ``m >= 3`` and ``b >= 2``, cycle, bipartite minus a
    matching); Paley, H_11, hypercube and generalized Petersen candidates
    are compared by canonical form. Where families overlap the earlier
    test wins, e.g. ``C_4`` is ``K_{2,2}`` and ``Q_3`` is ``K_{4,4}-4K_2``.

    Args:
        g: Graph to recognize
        form: Canonical form of ``g`` if already known
        cache: Candidate-form cache, shared module cache by default
    """
    cache = cache if cache is not None else _DEFAULT_CACHE
    n = g.n
    m = g.num_edges
    if n == 0:
        return FamilyLabel.unrecognized()
    if m == n * (n - 1) // 2:
        return FamilyLabel(FamilyTag.COMPLETE, (n,))
    connected = is_connected(g)
    sides = is_bipartite(g)
    if connected and sides is not None:
        a, b = sorted((len(sides[0]), len(sides[1])))
        if m == a * b:
            return FamilyLabel(FamilyTag.COMPLETE_BIPARTITE, (a, b))
    shape = _multipartite_shape(g)
    if shape is not None and shape[0] >= 3 and shape[1] >= 2:
        return FamilyLabel(FamilyTag.COMPLETE_MULTIPARTITE, shape)
    r = valency(g)
    if not connected or r is None:
        return FamilyLabel.unrecognized()
    if r == 2:
        return FamilyLabel(FamilyTag.CYCLE, (n,))
    if sides is not None:
        k = _is_bipartite_minus_matching(g, sides)
        if k is not None and k >= 4:
            return FamilyLabel(FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING, (k,))

    def same_as(label: FamilyLabel, build: Callable[[], Graph]) -> bool:
        nonlocal form
        if form is None:
            form = canonical_form(g)
        return _candidate_form(label, build, cache) == form

    if n >= 13 and n % 4 == 1 and r == (n - 1) // 2 and isprime(n):
        label = FamilyLabel(FamilyTag.PALEY, (n,))
        if same_as(label, lambda: paley(n)):
            return label
    if n == 22 and r in (5, 6):
        tag = FamilyTag.INCIDENCE_H11 if r == 5 else FamilyTag.NON_INCIDENCE_H11
        kind = HadamardKind.INCIDENCE if r == 5 else HadamardKind.NON_INCIDENCE
        if same_as(FamilyLabel(tag), lambda: hadamard11(kind)):
            return FamilyLabel(tag)
    if r >= 4 and n == 1 << r:
        label = FamilyLabel(FamilyTag.HYPERCUBE, (r,))
        if same_as(label, lambda: hypercube(r)):
            return label
    if r == 3 and n % 2 == 0 and n >= 6:
        half = n // 2
        for k in range(1, (half + 1) // 2):
            label = FamilyLabel(FamilyTag.GENERALIZED_PETERSEN, (half, k))
            if same_as(label, lambda: generalized_petersen(half, k)):
                return label
    return FamilyLabel.unrecognized()


def build_family(name: str, params: Tuple[int, ...]) -> Graph:
    """Build a graph from a CLI family name.

    Raises:
        FamilyParameterError: If the name is unknown or the parameter count is wrong
    """
    builders = {
        "complete": (complete, 1),
        "cycle": (cycle, 1),
        "bipartite": (complete_bipartite, 2),
        "cocktail": (complete_bipartite_minus_matching, 1),
        "multipartite": (complete_multipartite, 2),
        "paley": (paley, 1),
        "cube": (hypercube, 1),
        "gp": (generalized_petersen, 2),
    }
    if name == "h11":
        _require(not params, name, params, "no parameters")
        return hadamard11(HadamardKind.INCIDENCE)
    if name == "h11bar":
        _require(not params, name, params, "no parameters")
        return hadamard11(HadamardKind.NON_INCIDENCE)
    if name not in builders:
        raise FamilyParameterError(name, params, f"one of {', '.join(FAMILY_NAMES)}")
    build, arity = builders[name]
    _require(len(params) == arity, name, params, f"{arity} integer parameter(s)")
    return build(*params)


FAMILY_NAMES = (
    "complete",
    "cycle",
    "bipartite",
    "cocktail",
    "multipartite",
    "paley",
    "h11",
    "h11bar",
    "cube",
    "gp",
)
