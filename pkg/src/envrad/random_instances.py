"""Seeded generators of random rings, modules, submodules and homomorphisms.

Size bounds are chosen so that brute-force oracles stay fast: finite
modules produced here have at most ``size_cap`` elements.
"""

from __future__ import annotations

import random

from .lattice import mat_mul, identity
from .modules import (
    FgModule,
    ModuleHom,
    Submodule,
    free_module,
    hom_group,
    make_module,
    span_submodule,
    torsion_exponent,
)
from .rings import Integers, IntegersMod, MonicAlgebra, RingDesc, RingElem, factor_int

MONIC_MODULI = (
    (0, 0, 1),      # X^2
    (1, 0, 1),      # X^2 + 1
    (-1, 0, 1),     # X^2 - 1
    (0, 1, 1),      # X^2 + X
    (2, -3, 1),     # (X - 1)(X - 2)
    (0, 0, 0, 1),   # X^3
    (1, 1),         # X + 1
)


def random_vector(rng: random.Random, n: int, bound: int) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(n))


def random_unimodular(rng: random.Random, n: int, steps: int = 6):
    u = [list(r) for r in identity(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
    return tuple(tuple(r) for r in u)


def random_submodule(rng: random.Random, m: FgModule, max_gens: int = 2, bound: int = 12) -> Submodule:
    gens = [random_vector(rng, m.ambient_rank, bound) for _ in range(rng.randint(0, max_gens))]
    return span_submodule(m, gens)


def random_ring_elem(rng: random.Random, ring: RingDesc, bound: int = 12) -> RingElem:
    return ring.elem(random_vector(rng, ring.rank, bound))


def interesting_ring_elem(rng: random.Random, m: FgModule, bound: int = 6) -> RingElem:
    """A ring element likely to act non-invertibly on m.

    Mixes a prime factor of the torsion exponent, powers of X, and
    unconstrained draws so Γ_a is neither always 0 nor always M.
    """
    ring = m.ring
    kind = rng.random()
    e = torsion_exponent(m)
    if kind < 0.6 and e > 1:
        f = factor_int(e)
        # primes with p^2 | e make p·Γ_p nonzero
        p = rng.choice(sorted(q for q in f if f[q] > 1) or sorted(f))
        return ring.elem((p * rng.randint(1, 3),) + random_vector(rng, ring.rank - 1, 2))
    if kind < 0.8 and ring.is_monic_algebra:
        coeffs = [0] * ring.rank
        coeffs[rng.randint(1, ring.rank - 1) if ring.rank > 1 else 0] = rng.choice([1, 2, -1])
        return ring.elem(coeffs)
    return random_ring_elem(rng, ring, bound)


def _shrink(rng: random.Random, m: FgModule, size_cap: int) -> FgModule:
    while m.cardinality() is not None and m.cardinality() > size_cap:
        extra = random_vector(rng, m.ambient_rank, 6)
        m = make_module(m.ring, m.ambient_rank, m.relations.basis + (extra,), m.action)
    return m


def zmod_module(rng: random.Random, n_max: int = 60, rank_max: int = 3, size_cap: int = 1000) -> FgModule:
    n = rng.randint(2, n_max)
    r = rng.randint(1, rank_max)
    rels = [random_vector(rng, r, n) for _ in range(rng.randint(0, 2))]
    return _shrink(rng, make_module(IntegersMod(n), r, rels), size_cap)


def z_group(rng: random.Random, free_max: int = 2, exponent_max: int = 360) -> FgModule:
    """Z^f ⊕ Z/d1 ⊕ Z/d2 (d1 | d2 <= exponent_max) in a scrambled basis."""
    f = rng.randint(0, free_max)
    d2 = rng.randint(1, exponent_max)
    d1 = rng.choice([d for d in range(1, d2 + 1) if d2 % d == 0])
    n = 2 + f
    diag = [(d1 if i == 0 else d2 if i == 1 else 0) for i in range(n)]
    rels = [tuple(diag[i] * int(i == j) for j in range(n)) for i in range(n)]
    u = random_unimodular(rng, n)
    return make_module(Integers(), n, mat_mul(rels, u))


def finite_z_group(rng: random.Random, exponent_max: int = 360, size_cap: int = 1000) -> FgModule:
    while True:
        m = z_group(rng, free_max=0, exponent_max=exponent_max)
        if m.cardinality() <= size_cap:
            return m


def monic_module(rng: random.Random, finite: bool = True, size_cap: int = 1000) -> FgModule:
    ring = MonicAlgebra(rng.choice(MONIC_MODULI))
    free = free_module(ring, rng.randint(1, 2))
    rels = [random_vector(rng, free.ambient_rank, 4) for _ in range(rng.randint(0, 2))]
    n = free.ambient_rank
    if finite:
        e = rng.choice([2, 3, 4, 6, 8, 9, 12])
        rels += [tuple(e * int(i == j) for j in range(n)) for i in range(n)]
    m = make_module(ring, n, rels, free.action)
    return _shrink(rng, m, size_cap) if finite else m


def finite_module(rng: random.Random, size_cap: int = 1000) -> FgModule:
    kind = rng.random()
    if kind < 0.4:
        return zmod_module(rng, size_cap=size_cap)
    if kind < 0.7:
        return finite_z_group(rng, size_cap=size_cap)
    return monic_module(rng, finite=True, size_cap=size_cap)


def any_module(rng: random.Random) -> FgModule:
    kind = rng.random()
    if kind < 0.3:
        return zmod_module(rng)
    if kind < 0.6:
        return z_group(rng)
    return monic_module(rng, finite=rng.random() < 0.6)


def random_hom(rng: random.Random, m: FgModule, n: FgModule) -> ModuleHom:
    """A random combination of generators of Hom(M, N); the zero map if none."""
    _, basis = hom_group(m, n)
    mat = [[0] * n.ambient_rank for _ in range(m.ambient_rank)]
    for h in basis:
        c = rng.randint(-3, 3)
        for i, row in enumerate(h.matrix):
            for j, x in enumerate(row):
                mat[i][j] += c * x
    return ModuleHom(m, n, tuple(tuple(r) for r in mat))


def same_ring_pair(rng: random.Random, size_cap: int = 400) -> tuple[FgModule, FgModule]:
    kind = rng.random()
    if kind < 0.4:
        return finite_z_group(rng, size_cap=size_cap), (
            z_group(rng, free_max=1) if rng.random() < 0.5 else finite_z_group(rng, size_cap=size_cap)
        )
    if kind < 0.7:
        ring = IntegersMod(rng.randint(2, 60))
        pair = []
        for _ in range(2):
            r = rng.randint(1, 2)
            rels = [random_vector(rng, r, ring.n) for _ in range(rng.randint(0, 1))]
            pair.append(_shrink(rng, make_module(ring, r, rels), size_cap))
        return pair[0], pair[1]
    ring = MonicAlgebra(rng.choice(MONIC_MODULI))
    free = free_module(ring, 1)
    e1, e2 = rng.choice([2, 4, 6, 8]), rng.choice([2, 3, 4, 6])
    d = free.ambient_rank
    a = make_module(ring, d, [tuple(e1 * int(i == j) for j in range(d)) for i in range(d)], free.action)
    b = make_module(ring, d, [tuple(e2 * int(i == j) for j in range(d)) for i in range(d)], free.action)
    return a, b
