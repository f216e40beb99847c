import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey_tor.linalg import (
    AbelianGroupInvariants,
    IntegerMatrix,
    cokernel_invariants,
    homology,
    invariant_factors,
    kernel_basis,
    quotient_generators,
    quotient_generators_sparse,
    rank,
    smith_normal_form,
    smith_normal_form_with_inverse,
)
from mackey_tor.suite import _random_unimodular, smith_inverse


@st.composite
def matrices(draw, max_dim=7, bound=9):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = [[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(m)]
    return IntegerMatrix(rows, m, n)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_smith_form_properties(M):
    U, D, V = smith_normal_form(M)
    m, n = M.shape
    assert U @ M @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [D[i, i] for i in range(min(m, n))]
    assert all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_smith_inverse_transform(M):
    U, Uinv, D, V = smith_normal_form_with_inverse(M)
    assert U @ Uinv == IntegerMatrix.identity(M.nrows)
    assert U @ M @ V == D


def test_known_invariant_factors():
    M = IntegerMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3, 3)
    assert invariant_factors(M) == [2, 6, 12]
    assert str(cokernel_invariants(M)) == "Z/2 + Z/6 + Z/12"


def test_rank_and_kernel():
    M = IntegerMatrix([[1, 2, 3], [2, 4, 6]], 2, 3)
    assert rank(M) == 1
    K = kernel_basis(M)
    assert K.ncols == 2
    assert (M @ K).is_zero()


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=6), st.integers(0, 2**32 - 1))
def test_homology_invariant_under_base_change(M, seed):
    rng = random.Random(seed)
    K = kernel_basis(M)
    a = rng.randint(0, 4)
    X = IntegerMatrix([[rng.randint(-3, 3) for _ in range(a)] for _ in range(K.ncols)], K.ncols, a)
    d_in = K @ X
    inv, _ = homology(d_in, M)
    m, n = M.shape
    P, Q, R = (_random_unimodular(k, rng) for k in (n, m, a))
    inv2, _ = homology(P @ d_in @ R, Q @ M @ smith_inverse(P))
    assert inv == inv2


def test_homology_of_multiplication_by_two():
    # Z --2--> Z --0--> Z: homology Z/2 in the middle
    two = IntegerMatrix([[2]], 1, 1)
    zero = IntegerMatrix([[0]], 1, 1)
    inv, data = homology(two, zero)
    assert inv == AbelianGroupInvariants(0, (2,))
    assert data.ngens == 1


def test_homology_rejects_nonzero_composite():
    M = IntegerMatrix([[1]], 1, 1)
    with pytest.raises(ValueError):
        homology(M, M)


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=6, bound=3))
def test_sparse_quotient_generators_match_dense(M):
    cols = [dict((i, v) for i, v in enumerate(M.column(j)) if v) for j in range(M.ncols)]
    vecs, orders = quotient_generators_sparse(cols, M.nrows)
    _, dense_orders = quotient_generators(M)
    assert sorted(orders) == sorted(dense_orders)
    # the generators together with the columns span Z^n
    allcols = [list(M.column(j)) for j in range(M.ncols)] + vecs
    if M.nrows:
        S = IntegerMatrix.from_columns(allcols, M.nrows)
        assert invariant_factors(S) == [1] * M.nrows


def test_from_orders():
    g = AbelianGroupInvariants.from_orders([0, 1, 6, 4])
    assert g.free_rank == 1
    assert g.torsion == (2, 12)
    assert g.p_rank(2) == 2 and g.p_rank(3) == 1
