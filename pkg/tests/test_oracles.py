import random

import pytest

from envrad import random_instances as ri
from envrad.errors import CapExceeded
from envrad.modules import element_tuples, make_module, quotient, ring_representatives, span_submodule
from envrad.oracles import (
    _Tester,
    additive_closure,
    is_uniserial,
    oracle_all_submodules,
    oracle_envelope,
    oracle_is_prime,
    oracle_is_semiprime,
    oracle_nilpotent_set,
    oracle_radicals,
    oracle_ring_nilpotents,
    submodule_elements,
)
from envrad.rings import Integers, IntegersMod, MonicAlgebra

Z = Integers()


def zn(n):
    return make_module(Z, 1, [(n,)])


def test_envelope_oracle_examples():
    assert oracle_envelope(zn(12), zn(12).zero_submodule) == {(0,), (6,)}
    assert oracle_envelope(zn(4), zn(4).zero_submodule) == {(0,), (2,)}
    assert oracle_envelope(zn(5), zn(5).zero_submodule) == {(0,)}


def test_nilpotent_set_is_closure_of_raw_envelope():
    m = make_module(Z, 2, [(2, 0), (0, 4)])
    raw = oracle_envelope(m, m.zero_submodule)
    assert raw == {(0, 0), (0, 2)}
    assert raw <= additive_closure(m, raw)
    assert oracle_nilpotent_set(m) == additive_closure(m, raw)


def test_submodule_enumeration_examples():
    subs = oracle_all_submodules(zn(12))
    assert sorted(s.lattice.basis[0][0] for s in subs) == [1, 2, 3, 4, 6, 12]
    assert len(oracle_all_submodules(make_module(Z, 2, [(2, 0), (0, 2)]))) == 5
    with pytest.raises(CapExceeded):
        oracle_all_submodules(zn(10**5))


def test_radical_oracle_examples():
    s, b = oracle_radicals(zn(4), zn(4).zero_submodule)
    assert s.lattice.basis == b.lattice.basis == ((2,),)
    s, b = oracle_radicals(zn(12), zn(12).zero_submodule)
    assert s.lattice.basis == b.lattice.basis == ((6,),)
    m = zn(8)
    s, _ = oracle_radicals(m, m.zero_submodule)
    assert submodule_elements(s) == {(0,), (2,), (4,), (6,)}


def test_predicate_oracles():
    m = zn(12)
    assert oracle_is_semiprime(m, span_submodule(m, [(6,)]))
    assert not oracle_is_semiprime(zn(4), zn(4).zero_submodule)
    assert not oracle_is_prime(m, span_submodule(m, [(4,)]))
    assert oracle_is_prime(m, span_submodule(m, [(3,)]))


def test_uniserial():
    assert is_uniserial(zn(8))
    assert is_uniserial(zn(27))
    assert not is_uniserial(zn(12))
    assert not is_uniserial(make_module(Z, 2, [(2, 0), (0, 2)]))


def test_ring_nilpotents():
    assert list(oracle_ring_nilpotents(12)) == [0, 6]
    assert list(oracle_ring_nilpotents(8)) == [0, 2, 4, 6]
    assert list(oracle_ring_nilpotents(7)) == [0]
    assert list(oracle_ring_nilpotents(1)) == [0]
    with pytest.raises(ValueError):
        oracle_ring_nilpotents(0)


def _slow_semiprime(tester, m, k):
    q = tester.q
    if k.is_whole():
        return False
    for a in ring_representatives(q):
        for x in element_tuples(q):
            ax = q.act(a, x)
            if q.act(a, ax) in k and ax not in k:
                return False
    return True


def _slow_prime(tester, m, k):
    q = tester.q
    if k.is_whole():
        return False
    for a in ring_representatives(q):
        if all(q.act(a, x) in k for x in element_tuples(q)):
            continue
        if any(q.act(a, x) in k and x not in k for x in element_tuples(q)):
            return False
    return True


@pytest.mark.parametrize("seed", range(12))
def test_vectorized_tester_matches_loops(seed):
    rng = random.Random(seed)
    m = ri.finite_module(rng, size_cap=60)
    n = ri.random_submodule(rng, m)
    tester = _Tester(m, n)
    for s in oracle_all_submodules(tester.q):
        assert tester.semiprime(s.lattice) == _slow_semiprime(tester, m, s.lattice)
        assert tester.prime(s.lattice) == _slow_prime(tester, m, s.lattice)


def test_monic_oracle():
    dual = MonicAlgebra([0, 0, 1])
    m = make_module(dual, 2, [(2, 0)], [(0, 1), (0, 0)])
    assert oracle_nilpotent_set(m) == {(0, 0), (0, 1)}
    q, _ = quotient(m, m.zero_submodule)
    assert len(oracle_all_submodules(q)) == 3


def test_zmod_and_z_agree():
    over_z = zn(18)
    over_zmod = make_module(IntegersMod(18), 1, [])
    assert oracle_envelope(over_z, over_z.zero_submodule) == oracle_envelope(over_zmod, over_zmod.zero_submodule)
