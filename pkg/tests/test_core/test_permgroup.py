
import pytest
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from dihedrants.core.errors import (
    DegreeMismatchError,
    GroupError,
    IntransitiveGroupError,
    InvalidPermutationError,
    NonInvariantPartitionError,
    NotASubgroupError,
    PointRangeError,
)
from dihedrants.core.permgroup import (
    BlockSystem,
    Permutation,
    Verdict,
    compose,
    is_normal_subgroup,
    is_primitive,
    is_quasiprimitive,
    is_regular,
    is_semiregular,
    is_transitive,
    kernel_of_block_action,
    minimal_block_system,
    normal_closure,
    orbit,
    orbits,
    point_stabilizer,
    pointwise_stabilizer,
    schreier_sims,
)


def _cycle(n):
    return Permutation([(i + 1) % n for i in range(n)])


def _flip(n):
    return Permutation([(-i) % n for i in range(n)])


def _sympy_order(gens):
    return PermutationGroup([SympyPermutation(list(g.images)) for g in gens]).order()


def test_product_applies_left_factor_first():
    """Test that p * q maps i to q(p(i))."""
    p = Permutation.parse("(0 1)", 3)
    q = Permutation.parse("(1 2)", 3)
    pq = p * q
    for i in range(3):
        assert pq(i) == q(p(i))
    assert str(pq) == "(0 2 1)"
    assert compose(p, q) == pq


def test_parse_and_cycles():
    """Test cycle notation parsing, printing and validation."""
    p = Permutation.parse("(0 3)(1 2 4)", 6)
    assert p.images == (3, 2, 4, 0, 1, 5)
    assert p.cycles() == [(0, 3), (1, 2, 4)]
    assert p.order() == 6
    assert Permutation.parse("()", 4).is_identity

    with pytest.raises(GroupError):
        Permutation.parse("(0 a)", 3)
    with pytest.raises(GroupError):
        Permutation.parse("0 1", 3)
    with pytest.raises(PointRangeError):
        Permutation.parse("(0 5)", 3)
    with pytest.raises(InvalidPermutationError):
        Permutation([0, 0, 1])


def test_inverse_power_and_degree_mismatch():
    """Test inverses, negative powers and mixed degrees."""
    p = Permutation.parse("(0 1 2 3)", 5)
    assert (p * p.inverse()).is_identity
    assert p ** 4 == Permutation.identity(5)
    assert p ** -1 == p.inverse()
    assert p.support() == [0, 1, 2, 3]
    assert p.conjugate(Permutation.parse("(0 1)", 5)) == Permutation.parse("(0 2 3 1)", 5)
    with pytest.raises(DegreeMismatchError):
        p * Permutation.identity(4)


def test_orbits():
    """Test orbit computation against a hand-built partition."""
    gens = [Permutation.parse("(0 1)(4 5)", 6), Permutation.parse("(1 2)", 6)]
    assert orbit(gens, 0) == frozenset({0, 1, 2})
    assert orbits(gens, 6) == [(0, 1, 2), (3,), (4, 5)]
    with pytest.raises(PointRangeError):
        orbit(gens, 9)


@pytest.mark.parametrize(
    "gens",
    [
        [_cycle(7), _flip(7)],
        [Permutation.parse("(0 1)", 5), _cycle(5)],
        [Permutation.parse("(0 1 2)", 6), Permutation.parse("(3 4 5)", 6)],
        [Permutation.parse("(0 1 2 3)(4 5 6 7)", 8), Permutation.parse("(0 4)(1 7)(2 6)(3 5)", 8)],
    ],
)
def test_schreier_sims_order_matches_sympy(gens):
    """Test that the chain order agrees with sympy's."""
    chain = schreier_sims(gens)
    assert chain.order == _sympy_order(gens)
    for g in gens:
        assert g in chain


def test_chain_membership_and_elements():
    """Test sifting membership and element enumeration."""
    chain = schreier_sims([_cycle(5), _flip(5)])
    elements = list(chain.elements())
    assert len(elements) == 10
    assert len({e.images for e in elements}) == 10
    assert all(chain.contains(e) for e in elements)
    assert not chain.contains(Permutation.parse("(0 1)", 5))


def test_base_prefix_and_stabilizers():
    """Test base prefixes and point stabilizers of S_4."""
    chain = schreier_sims([_cycle(4), Permutation.parse("(0 1)", 4)], base_prefix=[2, 3])
    assert chain.base[:2] == (2, 3)
    assert chain.order == 24
    assert sorted(chain.basic_orbits[0]) == [0, 1, 2, 3]
    assert point_stabilizer(chain, 0).order == 6
    assert pointwise_stabilizer(chain, [2, 3]).order == 2
    assert pointwise_stabilizer(chain, [0, 1, 2]).is_trivial
    with pytest.raises(PointRangeError):
        schreier_sims([_cycle(4)], base_prefix=[4])


def test_empty_generator_list_needs_degree():
    """Test the trivial group on an explicit domain."""
    chain = schreier_sims([], degree=3)
    assert chain.order == 1
    assert chain.orbits() == [(0,), (1,), (2,)]
    with pytest.raises(GroupError):
        schreier_sims([])


def test_transitivity_and_regularity():
    """Test transitive, regular and semiregular predicates."""
    rotation = schreier_sims([_cycle(6)])
    assert is_transitive(rotation.strong_generators, 6)
    assert is_regular(rotation)
    assert is_semiregular(rotation)

    dihedral = schreier_sims([_cycle(6), _flip(6)])
    assert is_transitive(dihedral.strong_generators, 6)
    assert not is_regular(dihedral)

    half_turn = schreier_sims([_cycle(6) ** 3])
    assert not is_transitive(half_turn.strong_generators, 6)
    assert is_semiregular(half_turn)


def test_minimal_block_systems_of_hexagon():
    """Test block systems of the rotation group of a hexagon."""
    gens = [_cycle(6)]
    pairs = minimal_block_system(gens, (0, 3))
    assert pairs.cells == ((0, 3), (1, 4), (2, 5))
    assert pairs.num_cells == 3
    assert pairs.cell_size == 2

    triples = minimal_block_system(gens, (0, 2))
    assert triples.cells == ((0, 2, 4), (1, 3, 5))

    assert minimal_block_system(gens, (0, 1)).is_trivial

    with pytest.raises(IntransitiveGroupError):
        minimal_block_system([_cycle(6) ** 2], (0, 1))


def test_primitivity():
    """Test that S_5 and C_5 are primitive but C_6 is not."""
    assert is_primitive([_cycle(5), Permutation.parse("(0 1)", 5)])
    assert is_primitive([_cycle(5)])
    assert not is_primitive([_cycle(6)])


def test_block_system_validation():
    """Test rejection of malformed partitions."""
    with pytest.raises(GroupError):
        BlockSystem.from_cells([(0, 1), (2,)], 3)
    with pytest.raises(GroupError):
        BlockSystem.from_cells([(0, 1), (1, 2)], 3)
    with pytest.raises(GroupError):
        BlockSystem.from_cells([(0, 1)], 4)

    blocks = BlockSystem.from_cells([(2, 0), (3, 1)], 4)
    assert blocks.cells == ((0, 2), (1, 3))
    with pytest.raises(NonInvariantPartitionError):
        blocks.image_permutation(Permutation.parse("(0 1)", 4))


def test_normal_subgroups():
    """Test normality and normal closure in D_12."""
    d12 = schreier_sims([_cycle(6), _flip(6)])
    half_turn = schreier_sims([_cycle(6) ** 3])
    assert is_normal_subgroup(d12, half_turn)

    reflection = schreier_sims([_flip(6)])
    assert not is_normal_subgroup(d12, reflection)
    assert normal_closure(d12, [_flip(6)]).order == 6

    with pytest.raises(NotASubgroupError):
        is_normal_subgroup(half_turn, d12)


def test_kernel_of_block_action():
    """Test the kernel of D_12 on the antipodal pairs of a hexagon."""
    d12 = schreier_sims([_cycle(6), _flip(6)])
    blocks = minimal_block_system(d12.strong_generators, (0, 3))
    kernel = kernel_of_block_action(d12, blocks)
    assert kernel.order == 2
    assert kernel.contains(_cycle(6) ** 3)


def test_quasiprimitivity():
    """Test quasiprimitive verdicts, witnesses and the order cap."""
    s4 = schreier_sims([_cycle(4), Permutation.parse("(0 1)", 4)])
    assert is_quasiprimitive(s4).verdict is Verdict.YES

    d8 = schreier_sims([_cycle(4), _flip(4)])
    result = is_quasiprimitive(d8)
    assert result.verdict is Verdict.NO
    assert result.witness is not None
    assert not is_transitive(result.witness.strong_generators, 4)

    assert is_quasiprimitive(s4, order_cap=10).verdict is Verdict.UNKNOWN

    with pytest.raises(IntransitiveGroupError):
        is_quasiprimitive(schreier_sims([_cycle(4) ** 2]))
