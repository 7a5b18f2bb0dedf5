import random

import pytest

from envrad import random_instances as ri
from envrad.errors import ActionNotCompatible, CapExceeded, InfiniteModule, InvalidInput, ModulusViolated
from envrad.lattice import hnf_basis, vec_mat
from envrad.modules import (
    ModuleHom,
    a_gamma,
    annihilated_part,
    annihilator,
    annihilator_and_reduce,
    as_module,
    check_hom,
    element_tuples,
    free_module,
    gamma,
    hom_group,
    hom_is_trivial,
    image,
    invariant_factors,
    make_module,
    preimage,
    primary_component,
    quotient,
    ring_representatives,
    scalar_of_action,
    simplify_presentation,
    span_submodule,
    validate_module,
)
from envrad.rings import Integers, IntegersMod, MonicAlgebra

Z = Integers()
DUAL = MonicAlgebra([0, 0, 1])
FLAGSHIP_ACTION = [(0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)]


def zn(n):
    return make_module(Z, 1, [(n,)])


@pytest.fixture
def flagship():
    return validate_module(DUAL, 4, [], FLAGSHIP_ACTION)


def test_validation_examples(flagship):
    m = validate_module(Z, 1, [(12,)])
    assert m.cardinality() == 12 and m.action is None
    with pytest.raises(ModulusViolated) as err:
        validate_module(DUAL, 2, [], [(1, 0), (0, 1)])
    assert err.value.witness is not None
    with pytest.raises(ActionNotCompatible):
        validate_module(DUAL, 2, [(1, 0)], [(0, 1), (0, 0)])
    with pytest.raises(ModulusViolated):
        validate_module(IntegersMod(6), 1, [])
    with pytest.raises(InvalidInput):
        validate_module(DUAL, 2, [], None)
    with pytest.raises(InvalidInput):
        validate_module(Z, 1, [], [(1,)])
    assert flagship.relations.is_zero()


def test_make_module_completes():
    m = make_module(IntegersMod(6), 2, [])
    assert invariant_factors(m) == (6, 6)
    d = make_module(DUAL, 2, [(3, 0)], [(0, 1), (0, 0)])
    # 3·1 forces 3·X through the action
    assert d.relations == hnf_basis([(3, 0), (0, 3)])


def test_span_examples(flagship):
    m = zn(12)
    assert span_submodule(m, [(6,)]).lattice.basis == ((6,),)
    assert span_submodule(m, []).is_zero()
    n = span_submodule(flagship, [(0, 1, 4, 0), (0, 0, 0, 1)])
    assert n.generators == ((0, 1, 4, 0), (0, 0, 0, 1))
    for row in n.generators:
        assert vec_mat(row, flagship.action) in n
    grown = span_submodule(flagship, [(0, 0, 1, 0)])
    assert (0, 0, 0, 1) in grown


def test_quotient_examples(flagship):
    m = zn(12)
    q, _ = quotient(m, span_submodule(m, [(6,)]))
    assert invariant_factors(q) == (6,)
    same, _ = quotient(m, m.zero_submodule)
    assert same.relations == m.relations
    e1 = span_submodule(flagship, [(0, 1, 0, 0), (0, 0, 4, 0), (0, 0, 0, 1)])
    q, _ = quotient(flagship, e1)
    assert invariant_factors(q) == (4, 0)
    _, reduced = annihilator_and_reduce(q)
    assert reduced is not None and reduced.ring == Z and invariant_factors(reduced) == (4, 0)
    assert annihilator_and_reduce(flagship)[1] is None


def test_preimage_examples():
    z, m = make_module(Z, 1), zn(12)
    p = ModuleHom(z, m, ((1,),))
    assert preimage(p, span_submodule(m, [(6,)])).lattice.basis == ((6,),)
    assert preimage(p, m.zero_submodule).lattice.basis == ((12,),)
    assert preimage(p, m.whole).is_whole()
    assert image(p, z.whole).is_whole()


def test_gamma_examples():
    m = zn(12)
    two, three, five = Z.elem(2), Z.elem(3), Z.elem(5)
    assert gamma(m, two).lattice.basis == ((3,),)
    assert gamma(m, Z.one).is_zero()
    assert gamma(m, Z.zero).is_whole()
    assert a_gamma(m, two).lattice.basis == ((6,),)
    assert a_gamma(m, three).is_zero()
    assert a_gamma(m, Z.one).is_zero()
    assert primary_component(m, 2).lattice.basis == ((3,),)
    assert gamma(m, five).is_zero()
    assert primary_component(make_module(Z, 1), 3).is_zero()
    assert annihilated_part(m, gamma(m, two), two).lattice.basis == ((6,),)


def test_scalar_reduction_and_annihilator():
    assert annihilator(zn(12)).lattice() == hnf_basis([(12,)])
    assert annihilator(make_module(Z, 2, [(4, 0)])).lattice().is_zero()
    m = make_module(DUAL, 2, [(0, 1), (4, 0)], [(0, 1), (0, 0)])
    assert scalar_of_action(m) == 0
    assert annihilator(m).lattice() == hnf_basis([(4, 0), (0, 1)])


def test_invariants_and_enumeration(flagship):
    assert invariant_factors(zn(12)) == (12,)
    assert invariant_factors(make_module(Z, 2, [(4, 0)])) == (4, 0)
    assert invariant_factors(flagship) == (0, 0, 0, 0)
    assert len(element_tuples(zn(12))) == 12
    assert element_tuples(make_module(Z, 0)) == [()]
    assert len(element_tuples(make_module(Z, 2, [(2, 0), (0, 2)]))) == 4
    with pytest.raises(InfiniteModule):
        element_tuples(flagship)
    with pytest.raises(CapExceeded):
        element_tuples(zn(10**6))
    assert len(ring_representatives(make_module(IntegersMod(12), 1, [(4,)]))) == 4


def test_hom_group_examples():
    assert hom_group(zn(4), zn(6))[0] == (2,)
    assert hom_group(make_module(Z, 1), zn(12))[0] == (12,)
    assert hom_is_trivial(zn(2), zn(3))
    for h in hom_group(zn(4), zn(6))[1]:
        check_hom(h)


def test_check_hom_rejects():
    with pytest.raises(InvalidInput):
        check_hom(ModuleHom(zn(4), zn(6), ((1,),)))
    src = free_module(DUAL, 1)
    with pytest.raises(ActionNotCompatible):
        check_hom(ModuleHom(src, src, ((1, 0), (0, 0))))


@pytest.mark.parametrize("seed", range(25))
def test_gamma_matches_definition(seed):
    rng = random.Random(seed)
    m = ri.finite_module(rng, size_cap=300)
    a = ri.interesting_ring_elem(rng, m)
    size = m.cardinality()
    g = gamma(m, a)
    ag = a_gamma(m, a)
    power = a**size
    for x in element_tuples(m):
        assert (x in g) == (not any(m.act(power, x)))
        if x in g:
            assert m.act(a, x) in ag


@pytest.mark.parametrize("seed", range(15))
def test_representations_preserve_invariants(seed):
    rng = random.Random(seed)
    m = ri.any_module(rng)
    m2, to_new, to_old = simplify_presentation(m)
    assert invariant_factors(m2) == invariant_factors(m)
    for row in m.relations.basis:
        assert vec_mat(row, to_new) in m2.relations
    n = ri.random_submodule(rng, m)
    s, emb = as_module(n)
    if m.is_finite():
        assert s.cardinality() * quotient(m, n)[0].cardinality() == m.cardinality()
    for row in emb:
        assert tuple(row) in n
