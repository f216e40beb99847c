"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
The checks themselves live in ``mackey_tor.suite`` so the CLI selftest runs
exactly the same code.
"""

import sys

import pytest

from mackey_tor import suite
from mackey_tor.rings import GREEN, TAMBARA

# runtime budgets in seconds
BUDGET = {1: 120, 2: 300, 3: 600, 8: 30}


def _tambara_both():
    r2, r3 = suite.tambara_table(2), suite.tambara_table(3)
    return suite.CheckResult("tambara p=2 and p=3 Tor tables (D=2p+10, N=13)", r2.ok and r3.ok,
                             f"p=2: {r2.detail} | p=3: {r3.detail}", r2.seconds + r3.seconds)


CRITERIA = {
    1: lambda: suite.green_p2_table(D=14, N=10),
    2: lambda: suite.green_p3_table(D=12, N=8),
    3: _tambara_both,
    4: suite.golden_differentials,
    5: lambda: suite.resolution_validity([(GREEN, 2, 14, 10), (GREEN, 3, 12, 8),
                                          (TAMBARA, 2, 14, 13), (TAMBARA, 3, 16, 13)]),
    6: lambda: suite.koszul_identities((3, 5)),
    7: lambda: suite.axiom_suites((2, 3, 5), bound=10),
    8: lambda: suite.linear_algebra_oracle(500),
    9: suite.tail_cross_check,
}


def evaluate(n):
    r = CRITERIA[n]()
    ok = r.ok and r.seconds <= BUDGET.get(n, float("inf"))
    return ok, f"criterion {n}: {'PASS' if ok else 'FAIL'} - {r.name} ({r.seconds:.1f}s) {r.detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
