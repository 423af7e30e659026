from itertools import product

import pytest

from stratamon import GroupSpec, InputError, ZeroSumSequence, block_to_congruence, hilbert_basis, is_elementary
from stratamon.block import MAX_ELEMENTS, block_monoid
from stratamon.errors import UnsupportedInstance
from stratamon.oracle import brute_atoms


def test_translation_matches_congruence():
    G = GroupSpec((7,), 0, ((1,), (2,)))
    system = block_to_congruence(G)
    assert system.rows == (((1, 2), 7),)
    assert set(hilbert_basis(block_monoid(G)).atoms) == {(0, 7), (1, 3), (3, 2), (5, 1), (7, 0)}
    G11 = GroupSpec((11,), 0, ((4,), (5,), (8,)))
    assert block_to_congruence(G11).rows == (((4, 5, 8), 11),)


def test_free_component():
    G = GroupSpec((), 1, ((1,), (-1,)))
    assert block_to_congruence(G).rows == (((1, -1), 0),)
    assert hilbert_basis(block_monoid(G)).atoms == ((1, 1),)


def test_mixed_group_against_brute_force():
    G = GroupSpec((2, 3), 0, ((1, 0), (0, 1), (1, 2)))
    M = block_monoid(G)
    assert set(hilbert_basis(M).atoms) == brute_atoms(M, 6)
    for x in product(range(4), repeat=3):
        s0 = (x[0] + x[2]) % 2
        s1 = (x[1] + 2 * x[2]) % 3
        assert block_to_congruence(G).satisfied(x) == (s0 == 0 and s1 == 0)


def test_elementary_examples():
    G = GroupSpec((7,), 0, ((1,), (2,)))
    assert is_elementary(G, (7, 0))
    assert is_elementary(G, ZeroSumSequence((0, 7)))
    assert not is_elementary(G, (3, 2))
    with pytest.raises(InputError):
        is_elementary(G, (0, 0))
    with pytest.raises(InputError):
        is_elementary(G, (1, 1))
    with pytest.raises(InputError):
        is_elementary(G, (14, 0))


def test_group_spec_validation():
    with pytest.raises(InputError):
        GroupSpec((1,), 0, ((0,),))
    with pytest.raises(InputError):
        GroupSpec((5,), 0, ((1,), (6,)))
    with pytest.raises(InputError):
        GroupSpec((5,), 0, ())
    with pytest.raises(InputError):
        GroupSpec.from_json({"elements": [[1]]})
    G = GroupSpec.from_json({"moduli": [7], "free_rank": 0, "elements": [[1], [9]]})
    assert G.elements == ((1,), (2,))


def test_support_cap():
    G = GroupSpec((29,), 0, tuple((i,) for i in range(1, MAX_ELEMENTS + 2)))
    with pytest.raises(UnsupportedInstance):
        is_elementary(G, (1,) + (0,) * MAX_ELEMENTS)


def test_zero_sum_support():
    assert ZeroSumSequence((0, 3, 0, 1)).support() == frozenset({1, 3})
