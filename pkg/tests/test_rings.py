import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envrad.errors import FactorLimitExceeded, InvalidInput, RingMismatch
from envrad.lattice import hnf_basis, mat_mul
from envrad.rings import (
    Integers,
    IntegersMod,
    MonicAlgebra,
    factor_int,
    format_poly,
    ideal_from_lattice,
    is_prime,
    nilradical,
    principal_ideal,
    radical_of_int,
    rho_matrix,
    squarefree_part,
)

DUAL = MonicAlgebra([0, 0, 1])


def test_ring_validation():
    with pytest.raises(InvalidInput):
        IntegersMod(1)
    with pytest.raises(InvalidInput):
        MonicAlgebra([1, 2])
    with pytest.raises(InvalidInput):
        MonicAlgebra([3])
    assert Integers().rank == 1 and IntegersMod(12).rank == 1 and DUAL.rank == 2


def test_arithmetic_examples():
    z12 = IntegersMod(12)
    assert z12.elem(5) * z12.elem(5) == z12.one
    x = DUAL.elem((0, 1))
    assert (x * x).is_zero()
    assert x**0 == DUAL.one
    assert z12.elem(-1).coeffs == (11,)
    assert DUAL.elem((1, 2, 3)).coeffs == (1, 2)
    with pytest.raises(RingMismatch):
        z12.one + IntegersMod(6).one
    with pytest.raises(InvalidInput):
        x ** -1


def test_rho_examples():
    assert rho_matrix(IntegersMod(12), IntegersMod(12).elem(5)) == ((5,),)
    assert rho_matrix(DUAL, DUAL.elem((3, 1))) == ((3, 1), (0, 3))
    assert rho_matrix(DUAL, DUAL.one) == ((1, 0), (0, 1))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.sampled_from([(1, 0, 0, 1), (2, -3, 0, 1), (0, 1, 1, 1)]),
)
def test_rho_is_multiplicative(a, b, modulus):
    r = MonicAlgebra(modulus)
    x, y = r.elem(a), r.elem(b)
    assert rho_matrix(r, x * y) == mat_mul(rho_matrix(r, x), rho_matrix(r, y))
    assert (x + y) * x == x * x + y * x


def test_nilradical_examples():
    assert nilradical(IntegersMod(12)).generators == (IntegersMod(12).elem(6),)
    assert nilradical(Integers()).generators[0].is_zero()
    assert nilradical(DUAL).generators == (DUAL.elem((0, 1)),)


def test_factor_examples():
    assert factor_int(12) == {2: 2, 3: 1}
    assert factor_int(1) == {}
    assert factor_int(360) == {2: 3, 3: 2, 5: 1}
    assert radical_of_int(360) == 30 and radical_of_int(1) == 1
    assert is_prime(97) and not is_prime(91) and not is_prime(1)


def test_factor_bound(monkeypatch):
    big = 1000003 * 1000033
    with pytest.raises(FactorLimitExceeded):
        factor_int(big, bound=1000)
    monkeypatch.setenv("ENVRAD_FACTOR_BOUND", "100")
    with pytest.raises(FactorLimitExceeded):
        factor_int(big)
    assert factor_int(2**20) == {2: 20}


def test_squarefree_examples():
    assert squarefree_part((0, 0, 1)) == (0, 1)
    assert squarefree_part((-1, 0, 1)) == (-1, 0, 1)
    # (X-1)^2 (X+2) -> (X-1)(X+2)
    assert squarefree_part((2, -3, 0, 1)) == (-2, 1, 1)


def test_ideals():
    z12 = IntegersMod(12)
    assert principal_ideal(z12, 8).generators == (z12.elem(4),)
    assert principal_ideal(z12, 8).lattice() == hnf_basis([(4,)])
    assert ideal_from_lattice(Integers(), hnf_basis([(6,)])).generators == (Integers().elem(6),)
    assert nilradical(DUAL).lattice() == hnf_basis([(0, 1)], 2)


def test_formatting():
    assert format_poly((2, -3, 0, 1)) == "X^3 - 3*X + 2"
    assert str(DUAL) == "Z[X]/(X^2)"
    assert str(IntegersMod(5)) == "Z/5"
