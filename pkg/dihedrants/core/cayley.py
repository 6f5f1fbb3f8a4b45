"""Cyclic and dihedral groups, connection sets and their Cayley graphs.

Vertex numbering is fixed: ``Z_n`` uses ``0 .. n-1``; ``D_2n`` puts the
rotations ``x^0 .. x^{n-1}`` first and the reflections ``x^i*y`` at
``n + i``, so cosets of the rotation subgroup are index ranges.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import (
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from sympy import totient

from .autsearch import AutomorphismGroup, automorphism_group
from .errors import CayleyError, GroupMismatchError, InvalidConnectionSetError, TokenError
from .graph import Graph, iter_bits
from .permgroup import Permutation, is_normal_subgroup, schreier_sims

logger = logging.getLogger(__name__)

_DIHEDRAL_TOKEN = re.compile(r"^(?:x(?:\^(-?\d+))?)?(\*?y)?$")


@dataclass(frozen=True)
class CyclicElement:
    """The residue ``value`` in ``Z_n``."""

    n: int
    value: int

    def __mul__(self, other: "CyclicElement") -> "CyclicElement":
        return mul(self, other)

    @property
    def inverse(self) -> "CyclicElement":
        return inv(self)

    @property
    def order(self) -> int:
        return element_order(self)

    @property
    def index(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class DihedralElement:
    """``x^rotation * y^flip`` in ``D_2n``."""

    n: int
    rotation: int
    flip: int = 0

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return mul(self, other)

    @property
    def inverse(self) -> "DihedralElement":
        return inv(self)

    @property
    def order(self) -> int:
        return element_order(self)

    @property
    def index(self) -> int:
        return self.rotation + self.flip * self.n

    @property
    def is_reflection(self) -> bool:
        return self.flip == 1

    def __str__(self) -> str:
        if self.flip:
            return "y" if self.rotation == 0 else f"x^{self.rotation}*y"
        return f"x^{self.rotation}"


Element = Union[CyclicElement, DihedralElement]


def mul(a: Element, b: Element) -> Element:
    """Group product ``a * b``.

    Raises:
        GroupMismatchError: If the elements belong to different groups
    """
    if type(a) is not type(b) or a.n != b.n:
        raise GroupMismatchError(a, b)
    if isinstance(a, CyclicElement):
        return CyclicElement(a.n, (a.value + b.value) % a.n)
    assert isinstance(b, DihedralElement)
    # (x^i y^e)(x^j y^d) = x^(i + (-1)^e j) y^(e + d)
    sign = -1 if a.flip else 1
    return DihedralElement(a.n, (a.rotation + sign * b.rotation) % a.n, (a.flip + b.flip) % 2)


def inv(a: Element) -> Element:
    if isinstance(a, CyclicElement):
        return CyclicElement(a.n, (-a.value) % a.n)
    if a.flip:
        return a
    return DihedralElement(a.n, (-a.rotation) % a.n, 0)


def element_order(a: Element) -> int:
    if isinstance(a, DihedralElement) and a.flip:
        return 2
    k = a.value if isinstance(a, CyclicElement) else a.rotation
    return a.n // gcd(a.n, k)


class GroupKind(Enum):
    """Group families supported for Cayley graphs."""

    CYCLIC = "Z"
    DIHEDRAL = "D"


@dataclass(frozen=True)
class GroupSpec:
    """``Z_n`` or ``D_2n``; ``n`` is the rotation order in both cases."""

    kind: GroupKind
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise CayleyError(f"Group parameter must be positive, got {self.n}")

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls(GroupKind.CYCLIC, n)

    @classmethod
    def dihedral(cls, n: int) -> "GroupSpec":
        return cls(GroupKind.DIHEDRAL, n)

    @property
    def is_dihedral(self) -> bool:
        return self.kind is GroupKind.DIHEDRAL

    @property
    def order(self) -> int:
        return 2 * self.n if self.is_dihedral else self.n

    @property
    def identity(self) -> Element:
        return self.element(0)

    def element(self, index: int) -> Element:
        """The element numbered ``index`` in vertex order."""
        if not 0 <= index < self.order:
            raise CayleyError(f"Element index {index} outside group of order {self.order}")
        if self.is_dihedral:
            return DihedralElement(self.n, index % self.n, index // self.n)
        return CyclicElement(self.n, index)

    def elements(self) -> Iterator[Element]:
        for index in range(self.order):
            yield self.element(index)

    @property
    def generators(self) -> Tuple[Element, ...]:
        if self.is_dihedral:
            return (DihedralElement(self.n, 1 % self.n, 0), DihedralElement(self.n, 0, 1))
        return (CyclicElement(self.n, 1 % self.n),)

    def parse_token(self, token: str) -> Element:
        """Parse ``"x^i"``, ``"x^i*y"``, ``"y"`` (dihedral) or an integer (cyclic).

        Raises:
            TokenError: If the token does not name an element of this group
        """
        text = token.strip().replace(" ", "")
        if self.kind is GroupKind.CYCLIC:
            if text.startswith("x^"):
                text = text[2:]
            try:
                return CyclicElement(self.n, int(text) % self.n)
            except ValueError:
                raise TokenError(token, f"Expected an integer in Z_{self.n}") from None
        if text in ("1", "e"):
            return DihedralElement(self.n, 0, 0)
        match = _DIHEDRAL_TOKEN.match(text)
        if not match or not text:
            raise TokenError(token, f"Expected x^i, x^i*y or y in D_{2 * self.n}")
        exponent_text, reflection = match.groups()
        has_x = text.startswith("x")
        exponent = int(exponent_text) if exponent_text is not None else (1 if has_x else 0)
        return DihedralElement(self.n, exponent % self.n, 1 if reflection else 0)

    def label(self) -> str:
        return f"D_{2 * self.n}" if self.is_dihedral else f"Z_{self.n}"


class ValidationResult(NamedTuple):
    """Outcome of :func:`validate_connection_set`; ``reasons`` is empty when valid."""

    reasons: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.reasons


@dataclass(frozen=True)
class ConnectionSet:
    """A subset ``S`` of a group, stored by element index."""

    group: GroupSpec
    indices: FrozenSet[int]

    @classmethod
    def from_elements(cls, group: GroupSpec, elements: Iterable[Element]) -> "ConnectionSet":
        indices = set()
        for element in elements:
            if element.n != group.n or (
                isinstance(element, DihedralElement) != group.is_dihedral
            ):
                raise GroupMismatchError(group.label(), element)
            indices.add(element.index)
        return cls(group, frozenset(indices))

    @classmethod
    def parse(cls, group: GroupSpec, text: str) -> "ConnectionSet":
        """Parse a comma-separated token list such as ``"x^1,x^5,y"``."""
        tokens = [tok for tok in text.split(",") if tok.strip()]
        return cls.from_elements(group, (group.parse_token(tok) for tok in tokens))

    @property
    def elements(self) -> List[Element]:
        return [self.group.element(i) for i in sorted(self.indices)]

    @property
    def tokens(self) -> Tuple[str, ...]:
        """Element tokens in vertex order."""
        return tuple(str(e) for e in self.elements)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return ",".join(self.tokens)

    def image(self, automorphism: Permutation) -> "ConnectionSet":
        """Image of ``S`` under a group automorphism given on element indices."""
        if automorphism.degree != self.group.order:
            raise CayleyError("Automorphism acts on the wrong number of elements")
        return ConnectionSet(self.group, frozenset(automorphism.images[i] for i in self.indices))


def _generated_order(group: GroupSpec, elements: Sequence[Element]) -> int:
    """Size of the subgroup generated by ``elements``."""
    identity = group.identity
    seen = {identity.index}
    queue = [identity]
    for current in queue:
        for s in elements:
            product = mul(current, s)
            if product.index not in seen:
                seen.add(product.index)
                queue.append(product)
    return len(seen)


def validate_connection_set(s: ConnectionSet) -> ValidationResult:
    """Report every violated connection-set condition."""
    reasons = []
    group = s.group
    elements = s.elements
    if group.identity.index in s.indices:
        reasons.append("contains identity")
    if any(inv(e).index not in s.indices for e in elements):
        reasons.append("not inverse-closed")
    if _generated_order(group, elements) != group.order:
        reasons.append("not generating")
    return ValidationResult(tuple(reasons))


def cayley_graph(s: ConnectionSet) -> Graph:
    """``Cay(G, S)``: vertex ``g`` joined to ``s * g`` for every ``s`` in ``S``.

    Raises:
        InvalidConnectionSetError: If ``S`` is not a valid connection set
    """
    result = validate_connection_set(s)
    if not result.ok:
        raise InvalidConnectionSetError(result.reasons, s.tokens)
    group = s.group
    elements = s.elements
    rows = [0] * group.order
    for g in group.elements():
        for element in elements:
            rows[g.index] |= 1 << mul(element, g).index
    graph = Graph._trusted(group.order, rows)
    logger.debug("Built Cay(%s, {%s}) with %d edges", group.label(), s, graph.num_edges)
    return graph


def right_translation(group: GroupSpec, g: Element) -> Permutation:
    """``R(g): v -> v * g`` on element indices."""
    return Permutation._trusted(tuple(mul(v, g).index for v in group.elements()))


def right_regular_rep(group: GroupSpec) -> List[Permutation]:
    """``R(x), R(y)`` for dihedral groups, ``R(1)`` for cyclic groups."""
    return [right_translation(group, g) for g in group.generators]


def _affine_automorphism(n: int, a: int, b: int) -> Permutation:
    # x^i y^e -> x^(a i + e b) y^e
    images = [0] * (2 * n)
    for i in range(n):
        images[i] = (a * i) % n
        images[n + i] = n + (a * i + b) % n
    return Permutation._trusted(tuple(images))


def dihedral_automorphisms(n: int) -> List[Permutation]:
    """Generators of ``Aut(D_2n)`` acting on the ``2n`` element indices.

    For ``n >= 3`` every automorphism is ``x -> x^a``, ``y -> x^b y`` with
    ``a`` a unit, giving order ``n * phi(n)``. ``D_4`` is the Klein group,
    whose automorphisms permute the three involutions freely; ``D_2`` has
    none besides the identity.
    """
    if n < 1:
        raise CayleyError(f"Dihedral parameter must be positive, got {n}")
    if n == 1:
        return []
    if n == 2:
        # 0 = 1, 1 = x, 2 = y, 3 = x*y
        return [Permutation._trusted((0, 2, 1, 3)), Permutation._trusted((0, 2, 3, 1))]
    gens = [_affine_automorphism(n, a, 0) for a in range(2, n) if gcd(a, n) == 1]
    gens.append(_affine_automorphism(n, 1, 1))
    return gens


def is_normal_cayley(
    g: Graph, group: GroupSpec, aut: Optional[AutomorphismGroup] = None
) -> bool:
    """True iff ``R(G)`` is normal in ``Aut(g)``.

    Args:
        g: Graph built by :func:`cayley_graph` on ``group``
        group: The group whose right regular representation is tested
        aut: Optional precomputed ``AutomorphismGroup`` of ``g``
    """
    if aut is None:
        aut = automorphism_group(g)
    # Aut(g) = R(G) : Aut(G, S) when normal
    if aut.chain.order > group.order * automorphism_group_order(group):
        return False
    regular = schreier_sims(right_regular_rep(group), degree=group.order)
    return is_normal_subgroup(aut.chain, regular)


class EnumerationMode(Enum):
    """Which connection sets :func:`enumerate_connection_sets` emits."""

    ALL = "all"
    UP_TO_EQUIVALENCE = "up_to_equivalence"


def rotation_atoms(n: int) -> List[Tuple[int, ...]]:
    """Inverse-closed rotation classes ``{i, -i}`` for ``0 < i <= n/2``."""
    atoms = [(i, n - i) for i in range(1, (n + 1) // 2)]
    if n % 2 == 0 and n >= 2:
        atoms.append((n // 2,))
    return atoms


def _units(n: int) -> List[int]:
    return [a for a in range(1, max(n, 2)) if gcd(a, n) == 1]


class _MaskPermuter:
    """Apply a point permutation of ``0 .. k-1`` to bitmasks, one byte at a time."""

    def __init__(self, images: Sequence[int]):
        size = len(images)
        self._tables = []
        for chunk in range((size + 7) // 8):
            table = []
            for byte in range(256):
                mask = 0
                for bit in range(8):
                    point = chunk * 8 + bit
                    if point < size and (byte >> bit) & 1:
                        mask |= 1 << images[point]
                table.append(mask)
            self._tables.append(table)

    def __call__(self, mask: int) -> int:
        result = 0
        for table in self._tables:
            result |= table[mask & 255]
            mask >>= 8
        return result


def _rotation_classes(n: int) -> List[Tuple[int, List[int]]]:
    """Least rotation-atom masks per unit orbit, each with its stabilizing units."""
    atoms = rotation_atoms(n)
    atom_of = {}
    for k, atom in enumerate(atoms):
        for i in atom:
            atom_of[i] = k
    units = _units(n)
    actions = {a: [atom_of[(a * atom[0]) % n] for atom in atoms] for a in units}
    permuters = {a: _MaskPermuter(images) for a, images in actions.items()}
    seen = set()
    classes = []
    for mask in range(1 << len(atoms)):
        if mask in seen:
            continue
        images = {a: permuter(mask) for a, permuter in permuters.items()}
        seen.update(images.values())
        stabilizer = [a for a, image in images.items() if image == mask] or [1]
        classes.append((mask, stabilizer))
    return classes


def _rotation_exponents(n: int, atoms: Sequence[Tuple[int, ...]], mask: int) -> List[int]:
    return [atoms[k][0] for k in iter_bits(mask)]


def _dihedral_generates(n: int, rotation_gcd: int, reflections: int) -> bool:
    """``<S> = D_2n`` iff S has a reflection and the rotation exponents
    together with the differences of reflection exponents have gcd 1 with n."""
    if not reflections:
        return False
    points = list(iter_bits(reflections))
    d = rotation_gcd
    first = points[0]
    for p in points[1:]:
        d = gcd(d, p - first)
        if d == 1:
            break
    return d == 1


def _connection_set(
    group: GroupSpec, atoms: Sequence[Tuple[int, ...]], rotation_mask: int, reflections: int
) -> ConnectionSet:
    indices = set()
    for k in iter_bits(rotation_mask):
        indices.update(atoms[k])
    if group.is_dihedral:
        indices.update(group.n + i for i in iter_bits(reflections))
    return ConnectionSet(group, frozenset(indices))


def _enumerate_cyclic(n: int, mode: EnumerationMode) -> Iterator[ConnectionSet]:
    group = GroupSpec.cyclic(n)
    atoms = rotation_atoms(n)
    if mode is EnumerationMode.ALL:
        masks: Iterable[int] = range(1, 1 << len(atoms))
    else:
        masks = (mask for mask, _ in _rotation_classes(n) if mask)
    for mask in masks:
        d = n
        for i in _rotation_exponents(n, atoms, mask):
            d = gcd(d, i)
        if d == 1:
            yield _connection_set(group, atoms, mask, 0)


def _enumerate_dihedral_bruteforce(n: int, mode: EnumerationMode) -> Iterator[ConnectionSet]:
    group = GroupSpec.dihedral(n)
    atoms = rotation_atoms(n)
    autos = dihedral_automorphisms(n)
    seen = set()
    for reflections in range(1 << n):
        for rotation_mask in range(1 << len(atoms)):
            candidate = _connection_set(group, atoms, rotation_mask, reflections)
            if not validate_connection_set(candidate).ok:
                continue
            if mode is EnumerationMode.UP_TO_EQUIVALENCE:
                if candidate.indices in seen:
                    continue
                orbit_sets = [candidate]
                for current in orbit_sets:
                    for a in autos:
                        image = current.image(a)
                        if image.indices not in seen:
                            seen.add(image.indices)
                            orbit_sets.append(image)
                seen.add(candidate.indices)
            yield candidate


def _enumerate_dihedral(n: int, mode: EnumerationMode) -> Iterator[ConnectionSet]:
    group = GroupSpec.dihedral(n)
    atoms = rotation_atoms(n)
    full = (1 << n) - 1

    def shift(mask: int) -> int:
        return ((mask << 1) | (mask >> (n - 1))) & full

    if mode is EnumerationMode.ALL:
        rotation_classes = [(mask, []) for mask in range(1 << len(atoms))]
    else:
        rotation_classes = _rotation_classes(n)

    for rotation_mask, stabilizer in rotation_classes:
        d = n
        for i in _rotation_exponents(n, atoms, rotation_mask):
            d = gcd(d, i)
        if mode is EnumerationMode.ALL:
            for reflections in range(1, full + 1):
                if _dihedral_generates(n, d, reflections):
                    yield _connection_set(group, atoms, rotation_mask, reflections)
            continue
        # Reflection sets up to i -> a*i + b with a stabilizing the rotation part;
        # the least mask of each orbit is emitted.
        multipliers = [_MaskPermuter([(a * i) % n for i in range(n)]) for a in stabilizer if a != 1]
        marked = bytearray(full + 1)
        for reflections in range(1, full + 1):
            if marked[reflections]:
                continue
            marked[reflections] = 1
            queue = [reflections]
            for current in queue:
                image = shift(current)
                if not marked[image]:
                    marked[image] = 1
                    queue.append(image)
                for multiply in multipliers:
                    image = multiply(current)
                    if not marked[image]:
                        marked[image] = 1
                        queue.append(image)
            if _dihedral_generates(n, d, reflections):
                yield _connection_set(group, atoms, rotation_mask, reflections)


def enumerate_connection_sets(
    group: GroupSpec, mode: EnumerationMode = EnumerationMode.UP_TO_EQUIVALENCE
) -> Iterator[ConnectionSet]:
    """Stream every valid connection set, or one per ``Aut(G)``-orbit.

    Dihedral sets are assembled from atoms: each reflection, each rotation
    pair ``{x^i, x^-i}`` and ``x^{n/2}`` for even ``n``. In equivalence
    mode the emitted set of each orbit has the least atom bitstring, read
    with the rotation atoms as the high bits: least rotation mask first,
    then least reflection mask.

    Raises:
        CayleyError: For dihedral ``n < 2`` or cyclic ``n < 3``
    """
    if group.is_dihedral:
        if group.n < 2:
            raise CayleyError("Connection-set enumeration needs D_2n with n >= 2")
        if group.n == 2:
            yield from _enumerate_dihedral_bruteforce(group.n, mode)
        else:
            yield from _enumerate_dihedral(group.n, mode)
        return
    if group.n < 3:
        raise CayleyError("Connection-set enumeration needs Z_n with n >= 3")
    yield from _enumerate_cyclic(group.n, mode)


def automorphism_group_order(group: GroupSpec) -> int:
    """``|Aut(G)|`` from the closed formulas."""
    n = group.n
    if not group.is_dihedral:
        return int(totient(n))
    if n == 1:
        return 1
    if n == 2:
        return 6
    return n * int(totient(n))
