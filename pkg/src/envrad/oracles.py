"""Brute-force ground truth on finite modules.

Everything here works on explicit element lists and literal definitions:
products a·m with a^k·m ∈ N, submodule lattices enumerated from cyclic
submodules, radicals as intersections over all (semi)prime submodules.
Nothing routes through Γ_a or the envelope strategies, so these serve as
independent checks of :mod:`envrad.envelope`.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import CapExceeded
from .lattice import IntLattice, lattice_combine
from .modules import (
    DEFAULT_ENUMERATION_CAP,
    FgModule,
    Submodule,
    element_tuples,
    quotient,
    ring_representatives,
    span_submodule,
    torsion_exponent,
)

SUBMODULE_ENUMERATION_CAP = 4096


def elements_array(m: FgModule, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    tuples = element_tuples(m, cap)
    return np.array(tuples, dtype=np.int64).reshape(len(tuples), m.ambient_rank)


def reduce_rows(lat: IntLattice, V: np.ndarray) -> np.ndarray:
    """Vectorized canonical reduction modulo a full-rank lattice."""
    V = V.copy()
    for i, row in enumerate(lat.basis):
        p = next(j for j, x in enumerate(row) if x)
        q = np.floor_divide(V[:, p], row[p])
        V -= q[:, None] * np.array(row, dtype=np.int64)[None, :]
    return V


def in_lattice(lat: IntLattice, V: np.ndarray) -> np.ndarray:
    return ~reduce_rows(lat, V).any(axis=1)


def _exponent(m: FgModule) -> int:
    """Smallest e with e·Z^n inside the relations (M finite)."""
    return torsion_exponent(m)


def _mat_pow_mod(mat, k: int, e: int) -> np.ndarray:
    n = len(mat)
    base = np.array([[x % e for x in row] for row in mat], dtype=object).reshape(n, n)
    result = np.identity(n, dtype=object) % e
    while k:
        if k & 1:
            result = result.dot(base) % e
        k >>= 1
        if k:
            base = base.dot(base) % e
    return result.astype(np.int64)


def _scalar_np(m: FgModule, a, e: int) -> np.ndarray:
    return _mat_pow_mod(m.scalar_matrix(a), 1, e)


def _rows_to_set(V: np.ndarray) -> set[tuple[int, ...]]:
    if len(V) == 0:
        return set()
    return {tuple(int(x) for x in r) for r in np.unique(V, axis=0)}


def oracle_envelope(m: FgModule, n: Submodule) -> set[tuple[int, ...]]:
    """The raw set E_M(N) of canonical elements of the finite module M."""
    X = elements_array(m)
    size_q = n.lattice.index()
    e = _exponent(m)
    out: set[tuple[int, ...]] = set()
    for a in ring_representatives(m):
        P = _scalar_np(m, a, e)
        PK = _mat_pow_mod(m.scalar_matrix(a), size_q, e)
        mask = in_lattice(n.lattice, X @ PK)
        out |= _rows_to_set(reduce_rows(m.relations, X[mask] @ P))
    return out


def additive_closure(m: FgModule, gens: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Smallest subgroup of the finite module M containing ``gens``."""
    n = m.ambient_rank
    S = np.zeros((1, n), dtype=np.int64)
    seen = {tuple([0] * n)}
    for g in sorted(gens):
        if g in seen:
            continue
        multiples = [np.zeros(n, dtype=np.int64)]
        step = np.array(g, dtype=np.int64)
        cur = reduce_rows(m.relations, step[None, :])[0]
        while cur.any():
            multiples.append(cur)
            cur = reduce_rows(m.relations, (cur + step)[None, :])[0]
        M = np.array(multiples)
        combined = (S[:, None, :] + M[None, :, :]).reshape(-1, n)
        S = np.unique(reduce_rows(m.relations, combined), axis=0)
        seen = _rows_to_set(S)
    return seen


def oracle_nilpotent_set(m: FgModule) -> set[tuple[int, ...]]:
    """All finite sums Σ a_i·m_i with a_i^k·m_i = 0."""
    return additive_closure(m, oracle_envelope(m, m.zero_submodule))


def submodule_elements(s: Submodule) -> set[tuple[int, ...]]:
    X = elements_array(s.parent)
    return _rows_to_set(X[in_lattice(s.lattice, X)])


def oracle_all_submodules(m: FgModule, cap: int = SUBMODULE_ENUMERATION_CAP) -> list[Submodule]:
    """Every submodule, as sums of cyclic submodules closed until saturation."""
    size = m.cardinality()
    if size is None or size > cap:
        raise CapExceeded(f"submodule enumeration needs a finite module of size <= {cap}")
    cyclic = {span_submodule(m, [x]).lattice for x in element_tuples(m)}
    found = set(cyclic) | {m.relations}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                t = lattice_combine("sum", s, c)
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return [Submodule(m, lat) for lat in sorted(found, key=lambda l: (len(l.basis), l.basis))]


def _element_index(lat: IntLattice, V: np.ndarray) -> np.ndarray:
    """Mixed-radix index of already reduced rows, matching element_tuples order."""
    diag = [lat.basis[i][p] for i, p in enumerate(lat.pivots)]
    idx = np.zeros(len(V), dtype=np.int64)
    for p, d in zip(lat.pivots, diag):
        idx = idx * d + V[:, p]
    return idx


class _Tester:
    """Literal semiprime / prime tests on submodules containing a fixed N.

    For every ring representative a the maps x -> a·x and x -> a²·x are
    tabulated as element indices, so each test is one array lookup.
    """

    def __init__(self, m: FgModule, n: Submodule):
        q, _ = quotient(m, n)
        self.q = q
        self.X = elements_array(q)
        e = _exponent(q)
        rows1, rows2 = [], []
        for a in ring_representatives(q):
            P = _scalar_np(q, a, e)
            P2 = _mat_pow_mod(q.scalar_matrix(a), 2, e)
            rows1.append(_element_index(q.relations, reduce_rows(q.relations, self.X @ P)))
            rows2.append(_element_index(q.relations, reduce_rows(q.relations, self.X @ P2)))
        self.once = np.array(rows1, dtype=np.int64).reshape(len(rows1), len(self.X))
        self.twice = np.array(rows2, dtype=np.int64).reshape(len(rows2), len(self.X))

    def semiprime(self, k: IntLattice) -> bool:
        if k.is_whole():
            return False
        in_k = in_lattice(k, self.X)
        return not (in_k[self.twice] & ~in_k[self.once]).any()

    def prime(self, k: IntLattice) -> bool:
        if k.is_whole():
            return False
        in_k = in_lattice(k, self.X)
        images = in_k[self.once]
        kills_m = images.all(axis=1)
        escapes = (images & ~in_k[None, :]).any(axis=1)
        return not (escapes & ~kills_m).any()


def oracle_radicals(
    m: FgModule, n: Submodule, cap: int = SUBMODULE_ENUMERATION_CAP
) -> tuple[Submodule, Submodule]:
    """(S(N), β(N)) as literal intersections; the whole module if none exist."""
    q, _ = quotient(m, n)
    if q.cardinality() is None or q.cardinality() > cap:
        raise CapExceeded(f"radical oracle needs a finite quotient of size <= {cap}")
    tester = _Tester(m, n)
    subs = oracle_all_submodules(tester.q, cap)
    whole = m.whole.lattice
    semiprimes = [s.lattice for s in subs if tester.semiprime(s.lattice)]
    primes = [s.lattice for s in subs if tester.prime(s.lattice)]

    def meet(lats):
        return reduce(lambda x, y: lattice_combine("intersect", x, y), lats, whole)

    return Submodule(m, meet(semiprimes)), Submodule(m, meet(primes))


def oracle_is_prime(m: FgModule, n: Submodule) -> bool:
    return _Tester(m, n).prime(n.lattice)


def oracle_is_semiprime(m: FgModule, n: Submodule) -> bool:
    return _Tester(m, n).semiprime(n.lattice)


def is_uniserial(m: FgModule) -> bool:
    subs = oracle_all_submodules(m)
    return all(a.lattice <= b.lattice or b.lattice <= a.lattice for i, a in enumerate(subs) for b in subs[i + 1:])


def oracle_ring_nilpotents(n: int) -> np.ndarray:
    """Residues x mod n with x^k ≡ 0 for k = bit length of n (n < 2^31)."""
    if not 1 <= n < 2**31:
        raise ValueError("n must lie in [1, 2^31)")
    x = np.arange(n, dtype=np.int64)
    acc = np.ones(n, dtype=np.int64) % n
    base = x.copy()
    k = n.bit_length()
    while k:
        if k & 1:
            acc = acc * base % n
        k >>= 1
        if k:
            base = base * base % n
    return np.flatnonzero(acc == 0)
