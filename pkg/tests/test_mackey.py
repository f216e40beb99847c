import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey_tor.linalg import AbelianGroupInvariants, CompositeNotZero, IntegerMatrix
from mackey_tor.mackey import (
    CATALOG_NAMES,
    MackeyCell,
    MackeyComplex,
    MackeyFunctor,
    MackeyMorphism,
    PrimeMismatch,
    catalog_cell,
    catalog_functor,
    catalog_sum,
    check_axioms,
    direct_sum,
    dumps,
    homology_of_complex,
    identify,
    loads,
)

PRIMES = [2, 3, 5, 7]


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_satisfies_axioms(p, name):
    assert check_axioms(catalog_cell(name, p)).ok


@pytest.mark.parametrize("p", PRIMES)
def test_catalog_levels(p):
    # (fixed, underlying) of A, A{z_e}, L, L∨, g
    want = {
        "A": ("Z^2", "Z"),
        "A{z_e}": ("Z", f"Z^{p}"),
        "L": ("Z", "0"),
        "L∨": ("0", f"Z^{p - 1}" if p > 2 else "Z"),
        "g": (f"Z/{p}", "0"),
    }
    for name, (fixed, under) in want.items():
        c = catalog_cell(name, p)
        assert (str(c.fixed.invariants), str(c.under.invariants)) == (fixed, under)


def test_broken_cell_fails():
    p = 3
    # A with the transfer of 1 sent to 1 instead of t breaks the double coset formula
    bad = MackeyCell(p, catalog_cell("A", p).fixed, catalog_cell("A", p).under,
                     [[1, p]], [[1], [0]], [[1]])
    report = check_axioms(bad)
    assert not report.ok
    assert report.first_failure == (0, "double coset")


multisets = st.fixed_dictionaries({n: st.integers(0, 2) for n in CATALOG_NAMES})


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(ms=multisets)
def test_identify_recovers_multiset(p, ms):
    ident = identify(catalog_sum(ms, p))
    assert ident.identified
    assert ident.entries == {k: v for k, v in ms.items() if v}


@settings(max_examples=30, deadline=None)
@given(ms=multisets, seed=st.integers(0, 10**6))
def test_identify_after_base_change(ms, seed):
    import random

    from mackey_tor.suite import _random_unimodular, smith_inverse

    p = 3
    c = catalog_sum(ms, p)
    if not (c.fixed.is_free and c.under.is_free):
        ms = dict(ms, g=0)
        c = catalog_sum(ms, p)
    rng = random.Random(seed)
    P = _random_unimodular(c.fixed.rank, rng)
    Q = _random_unimodular(c.under.rank, rng)
    Pi, Qi = smith_inverse(P), smith_inverse(Q)
    moved = MackeyCell(p, c.fixed, c.under, Q @ c.res @ Pi, P @ c.tr @ Qi, Q @ c.conj @ Qi)
    assert check_axioms(moved).ok
    assert identify(moved).entries == {k: v for k, v in ms.items() if v}


def test_unidentified_cell_describes_levels():
    # fixed Z/4 is no catalog sum
    c = MackeyCell(2, [4], [])
    ident = identify(c)
    assert not ident.identified
    assert ident.describe() == "?[Z/4 | 0]"


def test_json_round_trip():
    p, D = 3, 4
    M = direct_sum([catalog_functor("A{z_e}", p, 1, D), catalog_functor("g", p, 1, D),
                    catalog_functor("L∨", p, 3, D)])
    again = loads(dumps(M))
    assert again == M
    assert dumps(again) == dumps(M)
    assert M.support() == [1, 3]


def test_direct_sum_checks_primes():
    with pytest.raises(PrimeMismatch):
        direct_sum([catalog_functor("A", 2, 0, 2), catalog_functor("A", 3, 0, 2)])


def _times_t(p):
    # multiplication by t on A: fixed 1 -> t, t -> p t; underlying 1 -> p
    fixed = IntegerMatrix([[0, 0], [1, p]], 2, 2)
    under = IntegerMatrix([[p]], 1, 1)
    A = catalog_functor("A", p, 0, 0)
    return A, MackeyMorphism(A, A, {0: fixed}, {0: under})


@pytest.mark.parametrize("p", [2, 3])
def test_homology_of_multiplication_by_t(p):
    A, f = _times_t(p)
    assert f.commutes() == []
    H0, H1 = homology_of_complex(MackeyComplex([A, A], {1: f}))
    # ker: fixed Z spanned by p - t, underlying 0, so H_1 = L
    assert identify(H1, 0).entries == {"L": 1}
    # coker: fixed Z (1), underlying Z/p
    assert H0[0].fixed.invariants == AbelianGroupInvariants(1, ())
    assert H0[0].under.invariants == AbelianGroupInvariants(0, (p,))
    assert check_axioms(H0).ok


def test_composite_checked():
    A, f = _times_t(2)
    with pytest.raises(CompositeNotZero):
        homology_of_complex(MackeyComplex([A, A, A], {1: f, 2: f}))


def test_functor_zero():
    assert MackeyFunctor.zero(2, 3).is_zero()
    assert catalog_functor("g", 2, 2, 3).support() == [2]
