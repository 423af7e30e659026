import random
from fractions import Fraction

import pytest

from conftest import random_congruence

from stratamon import (
    InputError,
    Monoid,
    classify_atom,
    cone_facets,
    coordinates,
    extraction_grade,
    hilbert_basis,
    in_D,
    is_inside_factorial_base,
    mu,
)
from stratamon.errors import UnsupportedInstance
from stratamon.extraction import extremal_rays, strong_atoms_of
from stratamon.oracle import brute_lambda, enum_monoid


def test_facets_mod7(mod7):
    assert set(cone_facets(mod7).normals) == {(1, 0), (0, 1)}


def test_facets_generated_cone():
    M = Monoid.generated([(1, 3), (5, 1), (3, 2)])
    F = cone_facets(M)
    assert {tuple(abs(c) for c in v) for v in F.normals} == {(3, 1), (1, 5)}
    for v in F.normals:
        assert all(sum(a * b for a, b in zip(v, g)) >= 0 for g in [(1, 3), (5, 1), (3, 2)])


def test_facets_in_span():
    F = cone_facets(Monoid.generated([(1, 1)]))
    assert F.rank == 1
    assert F.contains((3, 3)) and not F.contains((1, 2)) and not F.contains((-1, -1))


def test_facets_dimension_cap():
    M = Monoid.congruence(5, [((1, 1, 1, 1, 1), 2)])
    with pytest.raises(UnsupportedInstance):
        cone_facets(M)


def test_lambda_examples(mod7):
    assert extraction_grade(mod7, (7, 0), (6, 4)) == Fraction(6, 7)
    assert extraction_grade(mod7, (1, 3), (3, 2)) == Fraction(2, 3)
    for x in [(1, 3), (6, 4), (14, 7)]:
        assert extraction_grade(mod7, x, x) == 1
    with pytest.raises(InputError):
        extraction_grade(mod7, (0, 0), (1, 3))
    with pytest.raises(InputError):
        extraction_grade(mod7, (1, 1), (1, 3))


def test_lambda_matches_oracle():
    rng = random.Random(3)
    for _ in range(6):
        M = random_congruence(rng)
        members = sorted(x for x in enum_monoid(M, max(M.source.moduli)) if any(x))
        for _ in range(6):
            x, y = rng.choice(members), rng.choice(members)
            assert extraction_grade(M, x, y) == brute_lambda(M, x, y, 60)


def test_classify_examples(mod7):
    c = classify_atom(mod7, (7, 0))
    assert c.extremal and c.pure and c.strong
    c = classify_atom(mod7, (3, 2))
    assert not (c.extremal or c.pure or c.strong)
    S = Monoid.generated([(2,), (3,)])
    for a in (2, 3):
        c = classify_atom(S, (a,))
        assert c.pure and not c.strong
    with pytest.raises(InputError):
        classify_atom(mod7, (6, 4))
    assert classify_atom(mod7, (0, 7)).to_json()["strong"] is True


def test_classify_flag_chain():
    rng = random.Random(5)
    monoids = [random_congruence(rng) for _ in range(4)]
    monoids.append(Monoid.generated([(2, 0), (4, 0), (1, 1), (0, 3)]))
    for M in monoids:
        for a in hilbert_basis(M).atoms:
            c = classify_atom(M, a)
            assert not c.strong or c.pure
            assert not c.pure or c.extremal


def test_extremal_and_strong_helpers():
    atoms = [(2, 0), (3, 0), (1, 1), (0, 2)]
    assert set(extremal_rays(atoms)) == {(1, 0), (0, 1)}
    assert strong_atoms_of(atoms) == [(0, 2)]


def test_coordinates_examples(mod11):
    Q = [(1, 3), (5, 1)]
    assert coordinates((6, 4), Q) == (1, 1)
    assert coordinates((3, 2), Q) == (Fraction(1, 2), Fraction(1, 2))
    assert coordinates((5, 1), Q) == (0, 1)
    assert in_D((3, 2), Q) and not in_D((6, 4), Q) and in_D((0, 0), Q)
    assert mu((3, 2), Q) == 2 and mu((6, 4), Q) == 1
    Q11 = [(0, 1, 9), (1, 8, 0), (7, 1, 0)]
    assert coordinates((1, 1, 3), Q11) == (Fraction(1, 3), Fraction(1, 15), Fraction(2, 15))
    assert mu((1, 1, 3), Q11) == 15
    with pytest.raises(InputError):
        coordinates((1, 0), [(1, 1), (2, 2)])
    with pytest.raises(InputError):
        coordinates((1, 0), Q)


def test_coordinates_are_lambda_on_a_base(mod7):
    M = Monoid.generated([(1, 3), (5, 1), (3, 2)])
    Q = [(1, 3), (5, 1)]
    for x in sorted(enum_monoid(M, 15)):
        c = coordinates(x, Q)
        assert [extraction_grade(M, q, x) for q in Q] == list(c)


def test_inside_factorial_base():
    M = Monoid.generated([(1, 3), (5, 1), (3, 2)])
    assert is_inside_factorial_base(M, [(1, 3), (5, 1)])
    assert not is_inside_factorial_base(M, [(3, 2)])
    F = Monoid.generated([(1, 0), (0, 1)])
    assert is_inside_factorial_base(F, [(1, 0), (0, 1)])
    with pytest.raises(InputError):
        is_inside_factorial_base(M, [(6, 4)])
