"""Permutation arithmetic and a deterministic Schreier-Sims engine.

All products follow one convention: ``p * q`` applies ``p`` first and then
``q``, so ``(p * q)(i) == q(p(i))``.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from math import lcm
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from typing_extensions import Self

from .errors import (
    DegreeMismatchError,
    GroupError,
    IntransitiveGroupError,
    InvalidPermutationError,
    NonInvariantPartitionError,
    NotAMemberError,
    NotASubgroupError,
    PointRangeError,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 10**6

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of ``{0, ..., degree - 1}`` stored as its image tuple."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InvalidPermutationError(imgs)
        self._images = imgs

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> Self:
        perm = object.__new__(cls)
        perm._images = images
        return perm

    @classmethod
    def identity(cls, degree: int) -> Self:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Self:
        """Build a permutation from disjoint cycles.

        Args:
            degree: Size of the domain
            cycles: Cycles such as ``[(0, 1, 2), (3, 4)]``

        Returns:
            The permutation mapping each cycle entry to the next one

        Raises:
            PointRangeError: If a cycle entry is outside the domain
            InvalidPermutationError: If the cycles are not disjoint
        """
        images = list(range(degree))
        seen: Set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise PointRangeError(point, degree)
                if point in seen:
                    raise InvalidPermutationError(images)
                seen.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> Self:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        cycles = []
        stripped = text.strip()
        if _CYCLE_RE.sub("", stripped).strip():
            raise GroupError(f"Cannot parse cycle notation: {text!r}")
        for body in _CYCLE_RE.findall(stripped):
            try:
                points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
            except ValueError:
                raise GroupError(f"Cannot parse cycle notation: {text!r}") from None
            if points:
                cycles.append(points)
        return cls.from_cycles(degree, cycles)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._images))

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __getitem__(self, point: int) -> int:
        return self._images[point]

    def __len__(self) -> int:
        return len(self._images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for i, v in enumerate(self._images):
            inv[v] = i
        return Permutation._trusted(tuple(inv))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def first_moved_point(self) -> Optional[int]:
        for i, v in enumerate(self._images):
            if i != v:
                return i
        return None

    def support(self) -> List[int]:
        return [i for i, v in enumerate(self._images) if i != v]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self._images)
        result = []
        for start in range(len(self._images)):
            if seen[start] or self._images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = self._images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self._images[point]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = lcm(result, len(cycle))
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``.

    Raises:
        DegreeMismatchError: If the degrees differ
    """
    if p.degree != q.degree:
        raise DegreeMismatchError(p.degree, q.degree)
    q_images = q.images
    return Permutation._trusted(tuple([q_images[i] for i in p.images]))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def _check_degrees(gens: Sequence[Permutation], degree: Optional[int]) -> int:
    if degree is None:
        if not gens:
            raise GroupError("At least one generator or an explicit degree is required")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatchError(degree, g.degree)
    return degree


def _orbit_list(gens: Sequence[Permutation], point: int) -> List[int]:
    found = {point}
    order = [point]
    for current in order:
        for g in gens:
            image = g.images[current]
            if image not in found:
                found.add(image)
                order.append(image)
    return order


def orbit(
    gens: Sequence[Permutation], point: int, degree: Optional[int] = None
) -> FrozenSet[int]:
    """Smallest set containing ``point`` and closed under every generator.

    Raises:
        PointRangeError: If the point is outside the domain
    """
    degree = _check_degrees(gens, degree)
    if not 0 <= point < degree:
        raise PointRangeError(point, degree)
    return frozenset(_orbit_list(gens, point))


def orbits(gens: Sequence[Permutation], degree: int) -> List[Tuple[int, ...]]:
    """All orbits on the domain, each sorted, ordered by smallest point."""
    _check_degrees(gens, degree)
    seen = [False] * degree
    result = []
    for start in range(degree):
        if seen[start]:
            continue
        members = _orbit_list(gens, start)
        for m in members:
            seen[m] = True
        result.append(tuple(sorted(members)))
    return result


@dataclass(frozen=True, eq=False)
class ChainLevel:
    """One level of a stabilizer chain.

    ``transversal[b]`` maps the base point to ``b``; ``inverse_transversal``
    holds the inverses so sifting never inverts on the fly.
    """

    base_point: int
    generators: Tuple[Permutation, ...]
    transversal: Mapping[int, Permutation]
    inverse_transversal: Mapping[int, Permutation]

    @property
    def orbit(self) -> Tuple[int, ...]:
        return tuple(self.transversal)


def _transversal(
    base_point: int, gens: Sequence[Permutation], degree: int
) -> Tuple[Dict[int, Permutation], Dict[int, Permutation]]:
    ident = Permutation.identity(degree)
    u: Dict[int, Permutation] = {base_point: ident}
    queue = [base_point]
    for delta in queue:
        u_delta = u[delta]
        for s in gens:
            image = s.images[delta]
            if image not in u:
                u[image] = u_delta * s
                queue.append(image)
    return u, {point: perm.inverse() for point, perm in u.items()}


class StabilizerChain:
    """Base and strong generating set for a permutation group.

    Instances are immutable once built; use :func:`schreier_sims` to make one.
    """

    def __init__(self, degree: int, levels: Sequence[ChainLevel]):
        self._degree = degree
        self._levels = tuple(levels)
        order = 1
        for level in self._levels:
            order *= len(level.transversal)
        self._order = order

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def levels(self) -> Tuple[ChainLevel, ...]:
        return self._levels

    @property
    def base(self) -> Tuple[int, ...]:
        return tuple(level.base_point for level in self._levels)

    @property
    def basic_orbits(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(level.orbit for level in self._levels)

    @property
    def order(self) -> int:
        return self._order

    @property
    def strong_generators(self) -> Tuple[Permutation, ...]:
        seen: Set[Tuple[int, ...]] = set()
        result = []
        for level in self._levels:
            for g in level.generators:
                if g.images not in seen:
                    seen.add(g.images)
                    result.append(g)
        return tuple(result)

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self.strong_generators

    @property
    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def tail(self, start: int) -> "StabilizerChain":
        """Chain of the pointwise stabilizer of the first ``start`` base points."""
        return StabilizerChain(self._degree, self._levels[start:])

    def sift(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip ``g`` through the chain.

        Returns:
            Tuple of (residue, index of the level where sifting stopped); the
            index equals the number of levels when every level was passed
        """
        if g.degree != self._degree:
            raise DegreeMismatchError(self._degree, g.degree)
        for m in range(start, len(self._levels)):
            level = self._levels[m]
            beta = g.images[level.base_point]
            t_inv = level.inverse_transversal.get(beta)
            if t_inv is None:
                return g, m
            g = g * t_inv
        return g, len(self._levels)

    def contains(self, g: Permutation) -> bool:
        residue, _ = self.sift(g)
        return residue.is_identity

    def __contains__(self, g: object) -> bool:
        return isinstance(g, Permutation) and self.contains(g)

    def elements(self) -> Iterator[Permutation]:
        """Every group element exactly once, as products of transversal elements."""

        def walk(level: int, acc: Permutation) -> Iterator[Permutation]:
            if level < 0:
                yield acc
                return
            for t in self._levels[level].transversal.values():
                yield from walk(level - 1, acc * t)

        yield from walk(len(self._levels) - 1, self.identity())

    def orbit(self, point: int) -> FrozenSet[int]:
        return orbit(self.strong_generators, point, self._degree)

    def orbits(self) -> List[Tuple[int, ...]]:
        return orbits(self.strong_generators, self._degree)

    def __repr__(self) -> str:
        return (
            f"StabilizerChain(degree={self._degree}, order={self._order}, "
            f"base={list(self.base)})"
        )


def _sift_levels(
    g: Permutation,
    base: Sequence[int],
    inv_transversals: Sequence[Mapping[int, Permutation]],
    start: int,
) -> Tuple[Permutation, int]:
    for m in range(start, len(base)):
        t_inv = inv_transversals[m].get(g.images[base[m]])
        if t_inv is None:
            return g, m
        g = g * t_inv
    return g, len(base)


def schreier_sims(
    gens: Sequence[Permutation],
    base_prefix: Sequence[int] = (),
    degree: Optional[int] = None,
) -> StabilizerChain:
    """Build a stabilizer chain whose base begins with ``base_prefix``.

    Every prefix point gets its own level, even when its basic orbit is
    trivial, so pointwise stabilizers of prefix points are chain tails.

    Args:
        gens: Group generators
        base_prefix: Points that must open the base, in order
        degree: Domain size, required only when ``gens`` is empty

    Returns:
        A valid chain with exact order

    Raises:
        DegreeMismatchError: If generator degrees differ
        PointRangeError: If a prefix point is outside the domain
    """
    n = _check_degrees(list(gens), degree)
    seen_gens: Set[Tuple[int, ...]] = set()
    generators: List[Permutation] = []
    for g in gens:
        if not g.is_identity and g.images not in seen_gens:
            seen_gens.add(g.images)
            generators.append(g)

    base: List[int] = []
    for point in base_prefix:
        if not 0 <= point < n:
            raise PointRangeError(point, n)
        if point not in base:
            base.append(point)
    for g in generators:
        if all(g.images[b] == b for b in base):
            moved = g.first_moved_point()
            assert moved is not None
            base.append(moved)

    level_gens: List[List[Permutation]] = []
    for i in range(len(base)):
        fixed = base[:i]
        level_gens.append([g for g in generators if all(g.images[b] == b for b in fixed)])
    transversals = []
    inv_transversals = []
    for i, b in enumerate(base):
        u, u_inv = _transversal(b, level_gens[i], n)
        transversals.append(u)
        inv_transversals.append(u_inv)

    i = len(base) - 1
    while i >= 0:
        restart = False
        u = transversals[i]
        for delta in list(u):
            u_delta = u[delta]
            for s in level_gens[i]:
                image = s.images[delta]
                schreier = u_delta * s * inv_transversals[i][image]
                if schreier.is_identity:
                    continue
                residue, drop = _sift_levels(schreier, base, inv_transversals, i + 1)
                if residue.is_identity:
                    continue
                if drop == len(base):
                    moved = residue.first_moved_point()
                    assert moved is not None
                    base.append(moved)
                    level_gens.append([])
                    transversals.append({})
                    inv_transversals.append({})
                for m in range(i + 1, drop + 1):
                    level_gens[m].append(residue)
                    transversals[m], inv_transversals[m] = _transversal(
                        base[m], level_gens[m], n
                    )
                i = drop
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    levels = [
        ChainLevel(
            base_point=base[m],
            generators=tuple(level_gens[m]),
            transversal=transversals[m],
            inverse_transversal=inv_transversals[m],
        )
        for m in range(len(base))
    ]
    chain = StabilizerChain(n, levels)
    logger.debug("Built chain of order %d, base length %d", chain.order, len(base))
    return chain


def point_stabilizer(chain: StabilizerChain, point: int) -> StabilizerChain:
    """Chain for the subgroup fixing ``point``."""
    if not 0 <= point < chain.degree:
        raise PointRangeError(point, chain.degree)
    if chain.levels and chain.levels[0].base_point == point:
        return chain.tail(1)
    rebuilt = schreier_sims(chain.strong_generators, base_prefix=[point], degree=chain.degree)
    return rebuilt.tail(1)


def pointwise_stabilizer(chain: StabilizerChain, points: Sequence[int]) -> StabilizerChain:
    """Chain for the subgroup fixing every point of ``points``."""
    distinct = list(dict.fromkeys(points))
    if tuple(distinct) == chain.base[: len(distinct)]:
        return chain.tail(len(distinct))
    rebuilt = schreier_sims(chain.strong_generators, base_prefix=distinct, degree=chain.degree)
    return rebuilt.tail(len(distinct))


def is_transitive(gens: Sequence[Permutation], domain_size: int) -> bool:
    if domain_size <= 1:
        return True
    if not gens:
        return False
    _check_degrees(gens, domain_size)
    return len(_orbit_list(gens, 0)) == domain_size


def is_regular(chain: StabilizerChain) -> bool:
    return chain.order == chain.degree and is_transitive(chain.strong_generators, chain.degree)


def is_semiregular(chain: StabilizerChain) -> bool:
    """True iff every point stabilizer is trivial (every orbit has length |G|)."""
    return all(len(o) == chain.order for o in chain.orbits())


@dataclass(frozen=True)
class BlockSystem:
    """A partition of the domain into equal-size cells."""

    cells: Tuple[Tuple[int, ...], ...]
    cell_of: Tuple[int, ...]

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], degree: int) -> "BlockSystem":
        """Normalize and validate a partition.

        Raises:
            GroupError: If the cells do not partition the domain into equal sizes
        """
        normalized = sorted((tuple(sorted(set(c))) for c in cells), key=lambda c: c[0] if c else -1)
        cell_of = [-1] * degree
        for index, cell in enumerate(normalized):
            if not cell:
                raise GroupError("Block system has an empty cell")
            for point in cell:
                if not 0 <= point < degree:
                    raise PointRangeError(point, degree)
                if cell_of[point] != -1:
                    raise GroupError(f"Point {point} lies in two cells")
                cell_of[point] = index
        if -1 in cell_of:
            raise GroupError(f"Point {cell_of.index(-1)} lies in no cell")
        if len({len(c) for c in normalized}) > 1:
            raise GroupError("Block system cells differ in size")
        return cls(cells=tuple(normalized), cell_of=tuple(cell_of))

    @property
    def degree(self) -> int:
        return len(self.cell_of)

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    @property
    def cell_size(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @property
    def is_trivial(self) -> bool:
        return self.num_cells <= 1 or self.cell_size == 1

    def image_permutation(self, g: Permutation) -> Permutation:
        """The permutation ``g`` induces on the cells.

        Raises:
            NonInvariantPartitionError: If some cell is not mapped onto a cell
        """
        if g.degree != self.degree:
            raise DegreeMismatchError(self.degree, g.degree)
        images = []
        for cell in self.cells:
            target = self.cell_of[g.images[cell[0]]]
            if any(self.cell_of[g.images[p]] != target for p in cell):
                raise NonInvariantPartitionError(cell)
            images.append(target)
        if len(set(images)) != len(images):
            raise NonInvariantPartitionError(self.cells[0])
        return Permutation._trusted(tuple(images))


def minimal_block_system(
    gens: Sequence[Permutation], seed: Tuple[int, int], degree: Optional[int] = None
) -> BlockSystem:
    """Finest block system with both seed points in one cell.

    Raises:
        IntransitiveGroupError: If the group is not transitive
    """
    degree = _check_degrees(gens, degree)
    orbit_size = len(_orbit_list(gens, 0)) if degree else 0
    if orbit_size != degree:
        raise IntransitiveGroupError(degree, orbit_size)
    a, b = seed
    for point in (a, b):
        if not 0 <= point < degree:
            raise PointRangeError(point, degree)

    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []
    if find(a) != find(b):
        parent[find(b)] = find(a)
        pending.append((a, b))
    while pending:
        x, y = pending.pop()
        for g in gens:
            gx, gy = g.images[x], g.images[y]
            rx, ry = find(gx), find(gy)
            if rx != ry:
                parent[ry] = rx
                pending.append((gx, gy))

    classes: Dict[int, List[int]] = {}
    for point in range(degree):
        classes.setdefault(find(point), []).append(point)
    return BlockSystem.from_cells(classes.values(), degree)


def is_primitive(gens: Sequence[Permutation], degree: Optional[int] = None) -> bool:
    """True iff the transitive group has only trivial blocks.

    Raises:
        IntransitiveGroupError: If the group is not transitive
    """
    degree = _check_degrees(gens, degree)
    if degree <= 2:
        if degree == 2 and not is_transitive(gens, 2):
            raise IntransitiveGroupError(2, 1)
        return True
    for j in range(1, degree):
        if minimal_block_system(gens, (0, j), degree).num_cells > 1:
            return False
    return True


def normal_closure(chain: StabilizerChain, seeds: Sequence[Permutation]) -> StabilizerChain:
    """Smallest subgroup containing ``seeds`` and normalized by the group.

    Raises:
        NotAMemberError: If a seed is not in the group
    """
    for s in seeds:
        if not chain.contains(s):
            raise NotAMemberError(s)
    gens = [s for s in seeds if not s.is_identity]
    closure = schreier_sims(gens, degree=chain.degree)
    conjugators = [(g, g.inverse()) for g in chain.strong_generators]
    queue = list(gens)
    while queue:
        h = queue.pop()
        for g, g_inv in conjugators:
            c = g_inv * h * g
            if not closure.contains(c):
                gens.append(c)
                queue.append(c)
                closure = schreier_sims(gens, degree=chain.degree)
    return closure


def is_normal_subgroup(chain_g: StabilizerChain, chain_n: StabilizerChain) -> bool:
    """True iff N is normalized by every generator of G.

    Raises:
        NotASubgroupError: If a generator of N lies outside G
    """
    for h in chain_n.strong_generators:
        if not chain_g.contains(h):
            raise NotASubgroupError(h)
    for g in chain_g.strong_generators:
        g_inv = g.inverse()
        for h in chain_n.strong_generators:
            if not chain_n.contains(g_inv * h * g):
                return False
    return True


def kernel_of_block_action(chain: StabilizerChain, blocks: BlockSystem) -> StabilizerChain:
    """Elements fixing every cell setwise.

    The group acts on points and cells together (degree ``n + k``); the
    kernel is the pointwise stabilizer of the ``k`` cell points.

    Raises:
        NonInvariantPartitionError: If the group does not preserve the cells
    """
    n = chain.degree
    if blocks.degree != n:
        raise DegreeMismatchError(n, blocks.degree)
    k = blocks.num_cells
    extended = []
    for g in chain.strong_generators:
        induced = blocks.image_permutation(g)
        extended.append(Permutation._trusted(g.images + tuple(n + c for c in induced.images)))
    ext_chain = schreier_sims(extended, base_prefix=range(n, n + k), degree=n + k)
    kernel_gens = [Permutation._trusted(h.images[:n]) for h in ext_chain.tail(k).strong_generators]
    return schreier_sims(kernel_gens, degree=n)


class Verdict(Enum):
    """Three-valued answer for capped decision procedures."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Quasiprimitivity:
    """Result of :func:`is_quasiprimitive`; ``witness`` is an intransitive normal subgroup."""

    verdict: Verdict
    witness: Optional[StabilizerChain] = None


def conjugacy_class(chain: StabilizerChain, g: Permutation) -> Set[Tuple[int, ...]]:
    """Image tuples of all conjugates of ``g``."""
    conjugators = [(x, x.inverse()) for x in chain.strong_generators]
    found = {g.images}
    queue = [g]
    for current in queue:
        for x, x_inv in conjugators:
            c = x_inv * current * x
            if c.images not in found:
                found.add(c.images)
                queue.append(c)
    return found


def is_quasiprimitive(
    chain: StabilizerChain, order_cap: int = DEFAULT_ORDER_CAP
) -> Quasiprimitivity:
    """Decide whether every nontrivial normal subgroup is transitive.

    Each nontrivial element contributes its normal closure; every minimal
    normal subgroup is such a closure, so checking one element per
    conjugacy class decides the question.

    Raises:
        IntransitiveGroupError: If the group itself is intransitive
    """
    degree = chain.degree
    gens = chain.strong_generators
    if not is_transitive(gens, degree):
        raise IntransitiveGroupError(degree, len(_orbit_list(gens, 0)) if gens else 1)
    if chain.order > order_cap:
        return Quasiprimitivity(Verdict.UNKNOWN)
    covered: Set[Tuple[int, ...]] = set()
    for g in chain.elements():
        if g.is_identity or g.images in covered:
            continue
        covered |= conjugacy_class(chain, g)
        closure = normal_closure(chain, [g])
        if not is_transitive(closure.strong_generators, degree):
            return Quasiprimitivity(Verdict.NO, closure)
    return Quasiprimitivity(Verdict.YES)
