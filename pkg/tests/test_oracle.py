from fractions import Fraction

import pytest

from conftest import MOD11_ATOMS

from stratamon import InputError, Monoid
from stratamon.oracle import Box, brute_apery, brute_atoms, brute_lambda, enum_monoid

MOD7_BOX7 = {(0, 0), (1, 3), (2, 6), (3, 2), (4, 5), (5, 1), (6, 4), (7, 0), (0, 7), (7, 7)}


def test_enum_monoid(mod7, mod11):
    assert enum_monoid(mod7, (7, 7)) == MOD7_BOX7
    assert enum_monoid(mod7, Box((0, 0))) == {(0, 0)}
    assert enum_monoid(mod11, 11) >= MOD11_ATOMS


def test_box():
    assert Box.cube(2, 1).bounds == (1, 1)
    assert len(list(Box((1, 2)).points())) == 6
    with pytest.raises(InputError):
        Box((-1, 0))


def test_brute_atoms(mod7, mod11):
    assert brute_atoms(mod7, 7) == {(0, 7), (1, 3), (3, 2), (5, 1), (7, 0)}
    assert brute_atoms(Monoid.generated([(1, 0), (0, 1)]), 3) == {(1, 0), (0, 1)}
    assert brute_atoms(mod11, 11) == MOD11_ATOMS


def test_brute_lambda(mod7):
    assert brute_lambda(mod7, (7, 0), (6, 4), 7) == Fraction(6, 7)
    assert brute_lambda(mod7, (1, 3), (3, 2), 3) == Fraction(2, 3)
    assert brute_lambda(mod7, (6, 4), (6, 4)) == 1
    # a lower bound when the denominator is out of reach
    assert brute_lambda(mod7, (7, 0), (6, 4), 6) < Fraction(6, 7)
    with pytest.raises(InputError):
        brute_lambda(mod7, (0, 0), (6, 4))


def test_brute_apery(mod7):
    assert set(brute_apery(mod7, [(7, 0), (0, 7)], 13)) == {(0, 0), (1, 3), (2, 6), (3, 2), (4, 5), (5, 1), (6, 4)}
