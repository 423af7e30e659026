import random

import pytest

from stratamon import Monoid, elliott_monoid

_ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def report():
    def _report(n: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[n] = (bool(ok), detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return _report


@pytest.fixture(scope="session")
def mod7():
    return elliott_monoid(1, 2, 7)[0]


@pytest.fixture(scope="session")
def mod11():
    return Monoid.congruence(3, [((4, 5, 8), 11)])


def random_congruence(rng: random.Random, dims=(2, 3), max_mod=13) -> Monoid:
    """One or two congruence rows sharing a modulus, so atoms stay in [0, d]^n."""
    n = rng.choice(dims)
    d = rng.randint(2, max_mod)
    rows = []
    for _ in range(rng.choice((1, 1, 2))):
        rows.append((tuple(rng.randrange(d) for _ in range(n)), d))
    return Monoid.congruence(n, rows)


MOD11_ATOMS = {
    (0, 0, 11), (0, 1, 9), (0, 2, 7), (0, 3, 5), (0, 4, 3), (0, 5, 1), (0, 11, 0),
    (1, 0, 5), (1, 1, 3), (1, 2, 1), (1, 8, 0), (2, 5, 0), (3, 0, 4), (3, 1, 2),
    (3, 2, 0), (5, 0, 3), (5, 1, 1), (7, 0, 2), (7, 1, 0), (9, 0, 1), (11, 0, 0),
}
