from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey_tor.checks import burnside_norm_failures, ring_axiom_failures
from mackey_tor.rings import (
    GREEN,
    TAMBARA,
    NotPrime,
    burnside,
    free_green_underlying,
    free_tambara_fixed,
    is_prime,
    make_ring,
)


@pytest.mark.parametrize("bad", [0, 1, 4, 6, 9, -3])
def test_rejects_non_primes(bad):
    with pytest.raises(NotPrime):
        burnside(bad)
    with pytest.raises(NotPrime):
        make_ring(GREEN, bad, 4)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_burnside_relations(p):
    A = burnside(p)
    t = A.fixed_t()
    assert t * t == A.fixed({A.t: p})
    assert t.res() == A.under({A.unit_monomial: p})
    assert A.under_one().tr() == t


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=60, deadline=None)
@given(a=st.integers(-10, 10), b=st.integers(-10, 10))
def test_burnside_norm(p, a, b):
    A = burnside(p)

    def nm(c):
        one, tcoef = c, (c ** p - c) // p
        return A.fixed({A.one: one, A.t: tcoef})

    assert A.norm(A.unit_monomial, a) == nm(a)
    assert nm(a * b) == nm(a) * nm(b)
    assert nm(a).res() == A.under({A.unit_monomial: a ** p})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_burnside_norm_sweep(p):
    assert burnside_norm_failures(p, 10) == []


@pytest.mark.parametrize("p,deg", [(2, 4), (3, 4), (5, 3)])
def test_green_underlying_axioms(p, deg):
    assert ring_axiom_failures(free_green_underlying(p, deg + 2), deg) == []


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tambara_fixed_axioms(p):
    assert ring_axiom_failures(free_tambara_fixed(p, 2 * p + 2), 2 * p + 1) == []


@pytest.mark.parametrize("p", [2, 3, 5])
def test_green_underlying_basis_sizes(p):
    R = free_green_underlying(p, 8)
    for d in range(7):
        under = comb(d + p - 1, p - 1)
        assert len(R.under_basis(d)) == under
        # fixed level: 1 and t in degree 0, otherwise one transfer per conjugation orbit
        orbits = {min(m[k:] + m[:k] for k in range(p)) for m in R.under_basis(d)}
        assert len(R.fixed_basis(d)) == (2 if d == 0 else len(orbits))


@pytest.mark.parametrize("p", [2, 3])
def test_tambara_fixed_basis_sizes(p):
    R = free_tambara_fixed(p, 12)
    for d in range(10):
        # x^a n^b with a + p b = d, plus t x^d
        want = sum(1 for a, b in product(range(d + 1), repeat=2) if a + p * b == d) + 1
        assert len(R.fixed_basis(d)) == want
        assert len(R.under_basis(d)) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_tambara_norm_relations(p):
    R = free_tambara_fixed(p, 3 * p)
    x, n, t = R.fx(), R.fn(), R.fixed_t()
    assert n.res() == R.ux(p)
    assert t * n == t * R.fx(p)
    (mono,) = R.ux().terms
    assert R.norm(mono) == n
    assert x.res() == R.ux()


def test_green_underlying_norm_element():
    R = free_green_underlying(3, 6)
    prod_ = R.under_one()
    for i in range(3):
        prod_ = prod_ * R.x(i)
    assert R.norm_element() == prod_
    assert R.x(0).conj(1) == R.x(1)


def test_make_ring_flavors():
    assert make_ring(GREEN, 2, 4).flavor == GREEN
    assert make_ring(TAMBARA, 3, 4).flavor == TAMBARA
    with pytest.raises(ValueError):
        make_ring("nope", 2, 4)
