import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envrad.errors import DimensionMismatch
from envrad.lattice import (
    hnf_basis,
    identity,
    inverse_unimodular,
    invariant_factors_of,
    lattice_combine,
    mat_mul,
    member,
    right_kernel_matrix,
    saturation,
    snf_decompose,
    snf_full,
    solve_mod_lattice,
    vec_mat,
    whole_lattice,
    zero_lattice,
)


def small_matrix(max_rows=4, ncols=3, bound=9):
    return st.lists(
        st.lists(st.integers(-bound, bound), min_size=ncols, max_size=ncols), min_size=0, max_size=max_rows
    )


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([(2, 0), (0, 3)], ((2, 0), (0, 3))),
        ([(4, 0), (6, 0)], ((2, 0),)),
        ([(1, 2), (3, 4)], ((1, 0), (0, 2))),
    ],
)
def test_hnf_examples(rows, expected):
    assert hnf_basis(rows).basis == expected


def test_hnf_canonical_shape():
    lat = hnf_basis([(3, 5, 7), (0, 4, 2), (6, 1, 0)])
    for i, p in enumerate(lat.pivots):
        assert lat.basis[i][p] > 0
        for j in range(i):
            assert 0 <= lat.basis[j][p] < lat.basis[i][p]


def test_hnf_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hnf_basis([(1, 2), (3,)])
    with pytest.raises(DimensionMismatch):
        hnf_basis([])


def test_snf_examples():
    assert [d for d in snf_decompose([(2, 0), (0, 3)])[0]] == [1, 6]
    assert list(snf_decompose([(2, 4), (6, 8)])[0]) == [2, 4]
    diag, L, R = snf_decompose(identity(3))
    assert list(diag) == [1, 1, 1]
    assert L == identity(3) and R == identity(3)


def test_intersection_and_sum_examples():
    two, three = hnf_basis([(2,)]), hnf_basis([(3,)])
    assert lattice_combine("intersect", two, three).basis == ((6,),)
    a = hnf_basis([(2, 0), (0, 1)])
    b = hnf_basis([(1, 1)])
    assert lattice_combine("intersect", a, b).basis == ((2, 2),)
    assert lattice_combine("sum", a, zero_lattice(2)) == a
    with pytest.raises(ValueError):
        lattice_combine("union", a, b)


def test_solve_examples():
    assert solve_mod_lattice([(2,)], hnf_basis([(4,)])).basis == ((2,),)
    assert solve_mod_lattice([(0,)], zero_lattice(1)) == whole_lattice(1)
    got = solve_mod_lattice([(2, 0), (0, 3)], hnf_basis([(6, 0), (0, 6)]))
    assert got == hnf_basis([(3, 0), (0, 2)])


def test_member_examples():
    six = hnf_basis([(6,)])
    assert member(six, (12,))
    assert not member(six, (4,))
    assert not member(hnf_basis([(1, 0), (0, 2)]), (5, 3))


def test_index_and_invariants():
    lat = hnf_basis([(2, 1), (0, 2)])
    assert lat.index() == 4
    assert invariant_factors_of(lat) == (4,)
    assert hnf_basis([(2, 0)], 2).index() is None
    assert invariant_factors_of(hnf_basis([(2, 0)], 2)) == (2, 0)


def test_saturation_and_kernel():
    assert saturation(hnf_basis([(2, 4)])) == hnf_basis([(1, 2)])
    k = right_kernel_matrix([(1, 2, 3)], 3)
    for col in zip(*k):
        assert sum(a * b for a, b in zip((1, 2, 3), col)) == 0
    assert len(k[0]) == 2


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_hnf_idempotent_and_same_span(rows):
    lat = hnf_basis(rows, 3)
    assert hnf_basis(lat.basis, 3) == lat
    for r in rows:
        assert r in lat
    for r in lat.basis:
        assert tuple(r) in hnf_basis(rows + [(0, 0, 0)], 3)


@settings(max_examples=60, deadline=None)
@given(small_matrix(max_rows=4, ncols=3))
def test_snf_transforms(rows):
    if not rows:
        return
    diag, L, R, Rinv = snf_full(rows, 3)
    prod = mat_mul(mat_mul(L, rows), R)
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j and i < len(diag) else 0)
    assert mat_mul(R, Rinv) == identity(3)
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=40, deadline=None)
@given(small_matrix(max_rows=3, ncols=3), st.integers(0, 10**6))
def test_invariant_factors_basis_independent(rows, seed):
    import random

    rng = random.Random(seed)
    u = [list(r) for r in identity(3)]
    for _ in range(5):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-3, 3)
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
    lat = hnf_basis(rows, 3)
    moved = hnf_basis([vec_mat(r, u) for r in rows], 3)
    assert invariant_factors_of(lat) == invariant_factors_of(moved)
    assert inverse_unimodular(u) is not None


@settings(max_examples=40, deadline=None)
@given(small_matrix(max_rows=2, ncols=2, bound=6), small_matrix(max_rows=2, ncols=2, bound=6))
def test_intersection_by_enumeration(a_rows, b_rows):
    a, b = hnf_basis(a_rows, 2), hnf_basis(b_rows, 2)
    meet = lattice_combine("intersect", a, b)
    total = lattice_combine("sum", a, b)
    assert meet <= a and meet <= b and a <= total and b <= total
    for v in itertools.product(range(-12, 13), repeat=2):
        assert (v in meet) == (v in a and v in b)


@settings(max_examples=40, deadline=None)
@given(small_matrix(max_rows=2, ncols=2, bound=5), small_matrix(max_rows=2, ncols=2, bound=8))
def test_solve_by_enumeration(a_rows, t_rows):
    if len(a_rows) != 2:
        return
    target = hnf_basis(t_rows, 2)
    sol = solve_mod_lattice(a_rows, target)
    for x in itertools.product(range(-8, 9), repeat=2):
        assert (x in sol) == (vec_mat(x, a_rows) in target)
