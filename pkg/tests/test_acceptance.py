"""The eleven acceptance criteria, each at its stated tolerance (exact)."""
import random
from fractions import Fraction

from conftest import random_congruence

from stratamon import (
    GroupSpec,
    Monoid,
    Relation,
    apery,
    classify_atom,
    elliott_monoid,
    extraction_grade,
    hilbert_basis,
    is_elementary,
    is_root_closed,
    parametrize,
    stratify,
    verify_bijection,
)
from stratamon.block import block_monoid
from stratamon.oracle import brute_apery, brute_atoms, brute_lambda, brute_representations, enum_monoid
from stratamon.stratify import Constraint

# the 21-element list criterion 5 expects for the mod-11 instance
MOD11_EXPECTED = {
    (0, 0, 11), (0, 11, 0), (11, 0, 0), (0, 1, 9), (0, 5, 1), (1, 0, 5), (9, 0, 1), (1, 8, 0),
    (7, 1, 0), (0, 2, 7), (0, 4, 3), (7, 0, 2), (3, 0, 4), (3, 2, 0), (2, 5, 0), (0, 3, 5),
    (5, 0, 3), (5, 1, 1), (1, 1, 3), (1, 2, 1), (3, 2, 1),
}


def _constraint_set(P):
    names = {s.atom: s.name for s in P.symbols}
    out = set()
    for k in P.constraints:
        assert isinstance(k, Constraint)
        out.add((frozenset((s, c) for s, c in k.coeffs), k.bound))
    return out, names


def test_c01_hilbert_basis_mod7(mod7, report):
    got = set(hilbert_basis(mod7).atoms)
    want = {(0, 7), (1, 3), (3, 2), (5, 1), (7, 0)}
    assert report(1, got == want, f"atoms={sorted(got)}")


def test_c02_apery_mod7(mod7, report):
    got = set(apery(mod7, [(7, 0), (0, 7)]).elements)
    want = {(0, 0), (1, 3), (2, 6), (3, 2), (4, 5), (5, 1), (6, 4)}
    assert report(2, got == want, f"{len(got)} elements")


def test_c03_stratify_and_parametrize_mod7(mod7, report):
    S = stratify(mod7)
    layers = [set(H) for H in S.layers]
    strata_ok = S.complete and layers == [{(7, 0), (0, 7)}, {(1, 3), (5, 1)}, {(3, 2)}]
    P = parametrize(mod7, S)
    got, names = _constraint_set(P)
    al, be, ga = names[(1, 3)], names[(5, 1)], names[(3, 2)]
    want = {
        (frozenset({(al, 1), (be, 5), (ga, 3)}), 7),
        (frozenset({(al, 3), (be, 1), (ga, 2)}), 7),
        (frozenset({(ga, 1)}), 2),
    }
    free_ok = set(P.free) == {names[(7, 0)], names[(0, 7)]}
    ok = strata_ok and got == want and free_ok
    assert report(3, ok, "; ".join(str(k) for k in P.constraints))


def test_c04_bijection_mod7(mod7, report):
    S = stratify(mod7)
    P = parametrize(mod7, S)
    rep = verify_bijection(mod7, P, 40)
    names = {s.atom: s.name for s in P.symbols}
    ga = names[(3, 2)]
    idx = next(i for i, k in enumerate(P.constraints) if dict(k.coeffs) == {ga: 1})
    broken = verify_bijection(mod7, P.without(idx), 40)
    dup64 = [d for d in broken["duplicates"] if d["value"] == [6, 4]]
    two_ways = bool(dup64) and sorted(
        (p[names[(1, 3)]], p[names[(5, 1)]], p[ga]) for p in dup64[0]["preimages"]
    ) == [(0, 0, 2), (1, 1, 0)]
    ok = rep["bijective"] and not broken["bijective"] and two_ways
    assert report(4, ok, f"members={rep['members']}, without gamma<2: {len(broken['duplicates'])} doubles")


def test_c05_mod11_counterexample(mod11, report):
    atoms = set(hilbert_basis(mod11).atoms)
    S = stratify(mod11)
    layers = [set(H) for H in S.layers]
    h123 = [
        {(0, 0, 11), (0, 11, 0), (11, 0, 0)},
        {(0, 1, 9), (0, 5, 1), (1, 0, 5), (9, 0, 1), (1, 8, 0), (7, 1, 0)},
        {(0, 2, 7), (0, 4, 3), (7, 0, 2), (3, 0, 4), (3, 2, 0), (2, 5, 0)},
    ]
    witness = Relation(((1, (5, 1, 1)), (1, (1, 1, 3))), ((1, (5, 0, 3)), (1, (1, 2, 1))))
    checks = {
        "hilbert basis as expected": atoms == MOD11_EXPECTED,
        "H1..H3": layers[:3] == h123,
        "failed at stage 4": S.failure is not None and S.failure.stage == 4,
        "witness": S.failure is not None and S.failure.witness is not None and S.failure.witness.same_as(witness),
    }
    failing = [k for k, v in checks.items() if not v]
    detail = "all parts hold" if not failing else (
        f"failing parts: {', '.join(failing)}; stratify stops at stage "
        f"{S.failure.stage if S.failure else '-'} ({S.failure.reason if S.failure else ''}); "
        f"expected-but-absent {sorted(MOD11_EXPECTED - atoms)}, computed-not-expected {sorted(atoms - MOD11_EXPECTED)}"
    )
    assert report(5, not failing, detail)


def test_c06_oracle_equivalence(report):
    rng = random.Random(20240606)
    instances = [random_congruence(rng) for _ in range(22)]
    pairs = 0
    bad = []
    for M in instances:
        d = max(M.source.moduli)
        atoms = set(hilbert_basis(M).atoms)
        if atoms != brute_atoms(M, d):
            bad.append(("atoms", M))
            continue
        axes = [a for a in atoms if sum(1 for c in a if c) == 1]
        extra = rng.sample(sorted(atoms), min(2, len(atoms)))
        for X in (axes, sorted(set(axes) | set(extra))):
            ap = apery(M, X, 12)
            if set(ap.elements) != set(brute_apery(M, X, list(ap.box))):
                bad.append(("apery", M, X))
        members = [x for x in enum_monoid(M, d) if any(x)]
        members.sort()
        for _ in range(5):
            x, y = rng.choice(members), rng.choice(members)
            pairs += 1
            if extraction_grade(M, x, y) != brute_lambda(M, x, y, 60):
                bad.append(("lambda", M, x, y))
    ok = not bad and len(instances) >= 20 and pairs >= 100
    assert report(6, ok, f"{len(instances)} instances, {pairs} lambda pairs, mismatches={bad[:3]}")


def _lambda_filter(M, A, box):
    out = set()
    for y in enum_monoid(M, box):
        if all(extraction_grade(M, x, y) < 1 for x in A):
            out.add(y)
    return out


def test_c07_apery_lambda(mod7, mod11, report):
    rng = random.Random(7)
    cases = [(mod7, [(7, 0), (0, 7)], 20), (mod7, [(7, 0), (0, 7), (1, 3), (5, 1)], 20),
             (mod11, [(0, 0, 11), (0, 11, 0), (11, 0, 0)], 11)]
    for _ in range(12):
        M = random_congruence(rng)
        atoms = sorted(hilbert_basis(M).atoms)
        cases.append((M, rng.sample(atoms, rng.randint(1, len(atoms))), 12 if M.dim == 2 else 7))
    bad = []
    for M, A, box in cases:
        ap = apery(M, A, box)
        inside = {y for y in ap.elements if max(y) <= box}
        if inside != _lambda_filter(M, A, box):
            bad.append((M, A))
    assert report(7, not bad, f"{len(cases)} instance/base pairs, mismatches={len(bad)}")


def test_c08_classification(report):
    rng = random.Random(8)
    full_ok = True
    for M in [elliott_monoid(1, 2, 7)[0]] + [random_congruence(rng) for _ in range(10)]:
        for a in hilbert_basis(M).atoms:
            c = classify_atom(M, a)
            full_ok &= c.extremal == c.pure == c.strong
    S = Monoid.generated([(2,), (3,)])
    ns = [classify_atom(S, (a,)) for a in (2, 3)]
    ns_ok = all(c.pure and not c.strong for c in ns)
    rc = is_root_closed(Monoid.generated([(2, 0), (1, 1), (0, 3)]))
    rc_ok = rc.closed is False and rc.witness == (0, 1)
    ok = full_ok and ns_ok and rc_ok
    assert report(8, ok, f"full flags agree={full_ok}, <2,3>={ns_ok}, root closure witness={rc.witness}")


def test_c09_uniqueness(report):
    instances = [elliott_monoid(a, b, c)[0] for a, b, c in ((1, 2, 7), (1, 3, 5), (2, 3, 5), (1, 4, 9), (3, 5, 8))]
    instances.append(Monoid.generated([(2, 0), (0, 2), (1, 1)]))
    checked = 0
    bad = []
    for M in instances:
        assert is_root_closed(M, 10).closed
        S = stratify(M)
        assert S.complete
        for x in enum_monoid(M, 40):
            n = len(brute_representations(M, S, x))
            checked += 1
            if n != 1:
                bad.append((M, x, n))
    assert report(9, not bad, f"{len(instances)} instances, {checked} elements, non-unique={bad[:3]}")


def test_c10_elementary_iff_strong(report):
    rng = random.Random(10)
    atoms_checked = 0
    bad = []
    for _ in range(24):
        d = rng.randint(2, 13)
        els = rng.sample(range(d), rng.randint(1, min(4, d)))
        G = GroupSpec((d,), 0, tuple((e,) for e in els))
        M = block_monoid(G)
        for a in hilbert_basis(M).atoms:
            atoms_checked += 1
            if is_elementary(G, a) != classify_atom(M, a).strong:
                bad.append((d, els, a))
    assert report(10, not bad, f"24 block monoids, {atoms_checked} atoms, mismatches={bad[:3]}")


def test_c11_lambda_additivity(report):
    rng = random.Random(11)
    instances = [elliott_monoid(1, 2, 7)[0], elliott_monoid(1, 3, 5)[0],
                 Monoid.congruence(3, [((4, 5, 8), 11)])]
    instances += [random_congruence(rng) for _ in range(6)]
    trials = 0
    bad = []
    for M in instances:
        S = stratify(M)
        base = S.layers[0]
        members = sorted(x for x in enum_monoid(M, 10 if M.dim == 2 else 6))
        for _ in range(20):
            q = rng.choice(base)
            x, y = rng.choice(members), rng.choice(members)
            a, b = rng.randint(0, 5), rng.randint(0, 5)
            z = tuple(a * u + b * v for u, v in zip(x, y))
            trials += 1
            lhs = extraction_grade(M, q, z)
            rhs = a * extraction_grade(M, q, x) + b * extraction_grade(M, q, y)
            if Fraction(lhs) != Fraction(rhs):
                bad.append((M, q, x, y, a, b))
    assert report(11, not bad, f"{trials} trials, failures={bad[:3]}")
