"""Finitely presented modules over Z, Z/n and monic algebras.

A module is Z^n modulo a relation lattice, with the algebra generator X
acting by an n×n integer matrix (row-vector convention).  Modules over Z/n
carry n·Z^n inside their relations and are otherwise handled exactly like
Z-modules: a residue and any of its lifts act identically.

Submodules are action-closed lattices between the relations and Z^n, so a
quotient M/N is just M with its relations replaced by N.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ActionNotCompatible,
    CapExceeded,
    InfiniteModule,
    InvalidInput,
    ModulusViolated,
    RingMismatch,
    StabilizationCapExceeded,
    UnsupportedRing,
)
from .lattice import (
    IntLattice,
    IntMat,
    Vec,
    as_mat,
    hnf_basis,
    identity,
    invariant_factors_of,
    lattice_combine,
    mat_add,
    mat_mul,
    mat_scale,
    member,
    snf_full,
    solve_mod_lattice,
    vec_mat,
    whole_lattice,
    zeros,
)
from .rings import (
    INTEGERS_MOD,
    IdealDesc,
    Integers,
    RingDesc,
    RingElem,
    ideal_from_lattice,
    rho_matrix,
)

DEFAULT_ENUMERATION_CAP = 10**5


@dataclass(frozen=True)
class FgModule:
    ring: RingDesc
    ambient_rank: int
    relations: IntLattice
    action: IntMat | None = None

    def element(self, coords: Sequence[int]) -> "Element":
        return Element(self.relations.reduce(tuple(int(c) for c in coords)))

    @property
    def zero_submodule(self) -> "Submodule":
        return Submodule(self, self.relations)

    @property
    def whole(self) -> "Submodule":
        return Submodule(self, whole_lattice(self.ambient_rank))

    def is_finite(self) -> bool:
        return self.relations.is_full_rank()

    def cardinality(self) -> int | None:
        return self.relations.index()

    def scalar_matrix(self, a: RingElem) -> IntMat:
        """Matrix of multiplication by ``a`` on the ambient lattice."""
        if a.ring != self.ring:
            raise RingMismatch(f"{a.ring} acting on a module over {self.ring}")
        n = self.ambient_rank
        if not self.ring.is_monic_algebra:
            return mat_scale(a.coeffs[0], identity(n))
        out = zeros(n, n)
        power = identity(n)
        for i, c in enumerate(a.coeffs):
            if i:
                power = mat_mul(power, self.action)
            if c:
                out = mat_add(out, mat_scale(c, power))
        return out

    def act(self, a: RingElem, v: Sequence[int]) -> Vec:
        return self.relations.reduce(vec_mat(v, self.scalar_matrix(a)))

    def __str__(self):
        return f"module over {self.ring} of rank {self.ambient_rank}, invariants {invariant_factors(self)}"


@dataclass(frozen=True)
class Element:
    coords: Vec

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Submodule:
    parent: FgModule
    lattice: IntLattice

    @property
    def generators(self) -> IntMat:
        return self.lattice.basis

    def __contains__(self, v) -> bool:
        return member(self.lattice, tuple(v))

    def __le__(self, other: "Submodule") -> bool:
        return self.lattice <= other.lattice

    def __lt__(self, other: "Submodule") -> bool:
        return self.lattice < other.lattice

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, lattice_combine("sum", self.lattice, other.lattice))

    def __and__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, lattice_combine("intersect", self.lattice, other.lattice))

    def is_zero(self) -> bool:
        return self.lattice == self.parent.relations

    def is_whole(self) -> bool:
        return self.lattice.is_whole()

    def is_proper(self) -> bool:
        return not self.is_whole()


@dataclass(frozen=True)
class ModuleHom:
    source: FgModule
    target: FgModule
    matrix: IntMat

    def __call__(self, v: Sequence[int]) -> Vec:
        return self.target.relations.reduce(vec_mat(v, self.matrix))


def _action_power_sum(coeffs: Sequence[int], action: IntMat) -> IntMat:
    n = len(action)
    out = zeros(n, n)
    power = identity(n)
    for i, c in enumerate(coeffs):
        if i:
            power = mat_mul(power, action)
        if c:
            out = mat_add(out, mat_scale(c, power))
    return out


def validate_module(
    ring: RingDesc,
    ambient_rank: int,
    relations: Iterable[Sequence[int]] = (),
    action: Sequence[Sequence[int]] | None = None,
) -> FgModule:
    """Check a raw presentation and return it in canonical form."""
    rel = hnf_basis(relations, ambient_rank)
    n = ambient_rank
    if ring.is_monic_algebra:
        if action is None:
            raise InvalidInput("a module over a monic algebra needs an action matrix")
        act = as_mat(action)
        if len(act) != n or any(len(r) != n for r in act):
            raise InvalidInput(f"action must be {n}x{n}")
        for row in rel.basis:
            img = vec_mat(row, act)
            if not member(rel, img):
                raise ActionNotCompatible("relations are not closed under the action", witness=row)
        for row in _action_power_sum(ring.modulus, act):
            if not member(rel, row):
                raise ModulusViolated("the modulus does not annihilate the module", witness=row)
        return FgModule(ring, n, rel, act)
    if action is not None:
        raise InvalidInput(f"no action matrix allowed over {ring}")
    if ring.kind == INTEGERS_MOD:
        for i in range(n):
            row = tuple(ring.n * int(i == j) for j in range(n))
            if not member(rel, row):
                raise ModulusViolated(f"{ring.n} does not annihilate the module", witness=row)
    return FgModule(ring, n, rel, None)


def make_module(
    ring: RingDesc,
    ambient_rank: int,
    relations: Iterable[Sequence[int]] = (),
    action: Sequence[Sequence[int]] | None = None,
) -> FgModule:
    """Complete a presentation (add n·Z^n, f(X)·Z^n, close under X) and validate."""
    n = ambient_rank
    rows = [tuple(r) for r in relations]
    if ring.kind == INTEGERS_MOD:
        rows += [tuple(ring.n * int(i == j) for j in range(n)) for i in range(n)]
    if ring.is_monic_algebra:
        act = as_mat(action)
        rows += list(_action_power_sum(ring.modulus, act))
        rel = _close(hnf_basis(rows, n), act)
        return validate_module(ring, n, rel.basis, act)
    return validate_module(ring, n, rows, None)


def free_module(ring: RingDesc, rank: int) -> FgModule:
    """R^rank on the integer basis e_i·X^j (block order)."""
    if not ring.is_monic_algebra:
        return make_module(ring, rank)
    d = ring.rank
    block = rho_matrix(ring, ring.elem((0, 1)))
    n = rank * d
    act = [[0] * n for _ in range(n)]
    for b in range(rank):
        for i in range(d):
            for j in range(d):
                act[b * d + i][b * d + j] = block[i][j]
    return make_module(ring, n, (), act)


def _close(lat: IntLattice, action: IntMat | None) -> IntLattice:
    if action is None:
        return lat
    while True:
        bigger = hnf_basis(lat.basis + tuple(vec_mat(r, action) for r in lat.basis), lat.ambient_rank)
        if bigger == lat:
            return lat
        lat = bigger


def span_submodule(m: FgModule, gens: Iterable[Sequence[int]]) -> Submodule:
    rows = [tuple(int(x) for x in g) for g in gens]
    lat = hnf_basis(list(m.relations.basis) + rows, m.ambient_rank)
    return Submodule(m, _close(lat, m.action))


def submodule_from_lattice(m: FgModule, lat: IntLattice) -> Submodule:
    """Wrap a lattice already known to be an action-closed superset of the relations."""
    return Submodule(m, lat)


def quotient(m: FgModule, n: Submodule) -> tuple[FgModule, ModuleHom]:
    q = FgModule(m.ring, m.ambient_rank, n.lattice, m.action)
    return q, ModuleHom(m, q, identity(m.ambient_rank))


def preimage(p: ModuleHom, s: Submodule) -> Submodule:
    return Submodule(p.source, solve_mod_lattice(p.matrix, s.lattice))


def image(h: ModuleHom, s: Submodule) -> Submodule:
    return span_submodule(h.target, (vec_mat(r, h.matrix) for r in s.lattice.basis))


def check_hom(h: ModuleHom) -> None:
    src, tgt = h.source, h.target
    for row in src.relations.basis:
        img = vec_mat(row, h.matrix)
        if not member(tgt.relations, img):
            raise InvalidInput(f"relation {row} does not map into the target relations")
    if src.ring.is_monic_algebra:
        left = mat_mul(src.action, h.matrix)
        right = mat_mul(h.matrix, tgt.action)
        for lr, rr in zip(left, right):
            if not member(tgt.relations, tuple(x - y for x, y in zip(lr, rr))):
                raise ActionNotCompatible("matrix does not commute with the action", witness=lr)


def _fitting_cap(m: FgModule) -> int:
    bits = sum(d.bit_length() for d in invariant_factors(m) if d)
    return 2 * m.ambient_rank + bits + 64


def gamma_with_exponent(m: FgModule, a: RingElem) -> tuple[Submodule, int]:
    """Γ_a(M) and the least k with a^k·Γ_a(M) = 0."""
    rho = m.scalar_matrix(a)
    k_lat = m.relations
    cap = _fitting_cap(m)
    for k in range(cap + 1):
        nxt = solve_mod_lattice(rho, k_lat)
        if nxt == k_lat:
            return Submodule(m, k_lat), k
        k_lat = nxt
    raise StabilizationCapExceeded(f"kernel chain of {a} did not stabilize within {cap} steps")


def gamma(m: FgModule, a: RingElem) -> Submodule:
    return gamma_with_exponent(m, a)[0]


def a_gamma(m: FgModule, a: RingElem) -> Submodule:
    g = gamma(m, a)
    rho = m.scalar_matrix(a)
    return span_submodule(m, (vec_mat(r, rho) for r in g.lattice.basis))


def annihilated_part(m: FgModule, s: Submodule, a: RingElem) -> Submodule:
    """(0 :_S a) = {x ∈ S : a·x = 0}."""
    killed = solve_mod_lattice(m.scalar_matrix(a), m.relations)
    return Submodule(m, lattice_combine("intersect", s.lattice, killed))


def primary_component(m: FgModule, p: int) -> Submodule:
    if m.ring.is_monic_algebra:
        raise UnsupportedRing("primary components are defined here for Z and Z/n modules only")
    return gamma(m, m.ring.elem(p))


def torsion_exponent(m: FgModule) -> int:
    """Exponent of the torsion subgroup (1 when torsion-free)."""
    nonzero = [d for d in invariant_factors(m) if d]
    return max(nonzero) if nonzero else 1


def annihilator(m: FgModule) -> IdealDesc:
    return ideal_from_lattice(m.ring, annihilator_lattice(m))


def annihilator_lattice(m: FgModule) -> IntLattice:
    """{c ∈ Z^rank(R) : (Σ c_i X^i)·M ⊆ relations}."""
    n = m.ambient_rank
    d = m.ring.rank
    powers = [identity(n)]
    for _ in range(1, d):
        powers.append(mat_mul(powers[-1], m.action))
    big = [tuple(x for row in p for x in row) for p in powers]
    target = hnf_basis(_block_rows(m.relations, n), n * n)
    return solve_mod_lattice(big, target)


def _block_rows(rel: IntLattice, blocks: int) -> list[tuple[int, ...]]:
    """Basis of rel^blocks inside Z^(blocks·n)."""
    n = rel.ambient_rank
    rows = []
    for b in range(blocks):
        for r in rel.basis:
            rows.append((0,) * (b * n) + r + (0,) * ((blocks - b - 1) * n))
    return rows


def scalar_of_action(m: FgModule) -> int | None:
    """An integer c with X acting as c on M, if one exists."""
    if not m.ring.is_monic_algebra:
        return None
    n = m.ambient_rank
    flat_a = tuple(x for row in m.action for x in row)
    flat_i = tuple(x for row in identity(n) for x in row)
    target = hnf_basis(_block_rows(m.relations, n), n * n)
    sol = solve_mod_lattice([flat_a, flat_i], target)
    if sol.basis and sol.basis[0][0] == 1:
        return -sol.basis[0][1]
    return None


def annihilator_and_reduce(m: FgModule) -> tuple[IdealDesc, FgModule | None]:
    ann = annihilator(m)
    if not m.ring.is_monic_algebra:
        return ann, m
    if scalar_of_action(m) is None:
        return ann, None
    return ann, FgModule(Integers(), m.ambient_rank, m.relations, None)


def invariant_factors(m: FgModule) -> tuple[int, ...]:
    return invariant_factors_of(m.relations)


def enumerate_elements(m: FgModule, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Element]:
    return [Element(v) for v in element_tuples(m, cap)]


def element_tuples(m: FgModule, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Vec]:
    if not m.is_finite():
        raise InfiniteModule(f"module has free rank {m.ambient_rank - m.relations.rank}")
    size = m.cardinality()
    if size > cap:
        raise CapExceeded(f"module has {size} elements, cap is {cap}")
    diag = [m.relations.basis[i][i] for i in range(m.ambient_rank)]
    return [tuple(v) for v in itertools.product(*(range(d) for d in diag))]


def ring_representatives(m: FgModule, cap: int = DEFAULT_ENUMERATION_CAP) -> list[RingElem]:
    """Representatives of R/Ann(M), which must be finite."""
    ann = annihilator_lattice(m)
    if not ann.is_full_rank():
        raise InfiniteModule("R/Ann(M) is infinite")
    size = ann.index()
    if size > cap:
        raise CapExceeded(f"R/Ann(M) has {size} elements, cap is {cap}")
    diag = [ann.basis[i][i] for i in range(ann.ambient_rank)]
    return [m.ring.elem(v) for v in itertools.product(*(range(d) for d in diag))]


def as_module(s: Submodule) -> tuple[FgModule, IntMat]:
    """Re-present a submodule as a standalone module on its own lattice basis.

    Returns the module and the embedding matrix (rows = basis of s).
    """
    m = s.parent
    basis = s.lattice.basis
    k = len(basis)

    def coords(v):
        c = s.lattice.coordinates(v)
        if c is None:
            raise InvalidInput(f"{v} is not in the submodule")
        return c

    rel_rows = [coords(r) for r in m.relations.basis]
    act = None
    if m.action is not None:
        act = tuple(coords(vec_mat(r, m.action)) for r in basis)
    return FgModule(m.ring, k, hnf_basis(rel_rows, k), act), basis


def simplify_presentation(m: FgModule) -> tuple[FgModule, IntMat, IntMat]:
    """Diagonalize the relations by Smith form and drop trivial generators.

    Returns ``(m2, to_new, to_old)``: ``x ↦ x·to_new`` maps M onto M2 and
    ``y ↦ y·to_old`` maps back; both are isomorphisms modulo relations.
    """
    n = m.ambient_rank
    diag, _, right, right_inv = snf_full(m.relations.basis, n)
    diag = list(diag) + [0] * (n - len(diag))
    keep = [j for j in range(n) if diag[j] != 1]
    to_new = tuple(tuple(row[j] for j in keep) for row in right)
    to_old = tuple(right_inv[j] for j in keep)
    k = len(keep)
    rel = [tuple(diag[keep[i]] * int(i == j) for j in range(k)) for i in range(k)]
    act = None
    if m.action is not None:
        full = mat_mul(mat_mul(right_inv, m.action), right)
        act = tuple(tuple(full[i][j] for j in keep) for i in keep)
    return FgModule(m.ring, k, hnf_basis(rel, k), act), to_new, to_old


def hom_group(m: FgModule, n: FgModule) -> tuple[tuple[int, ...], list[ModuleHom]]:
    """Hom_R(M, N) as invariant factors plus generating homomorphisms."""
    if m.ring != n.ring:
        raise RingMismatch(f"{m.ring} vs {n.ring}")
    a, b = m.ambient_rank, n.ambient_rank
    nvars = a * b

    def unit(i, j):
        return tuple(tuple(int(r == i and c == j) for c in range(b)) for r in range(a))

    conds: list[IntMat] = list(m.relations.basis)
    blocks = len(conds) + (a if m.ring.is_monic_algebra else 0)
    big = []
    for i in range(a):
        for j in range(b):
            e = unit(i, j)
            row: list[int] = []
            for r in m.relations.basis:
                row.extend(vec_mat(r, e))
            if m.ring.is_monic_algebra:
                diff = mat_add(mat_mul(m.action, e), mat_scale(-1, mat_mul(e, n.action)))
                for dr in diff:
                    row.extend(dr)
            big.append(tuple(row))
    if blocks == 0:
        valid = whole_lattice(nvars)
    else:
        valid = solve_mod_lattice(big, hnf_basis(_block_rows(n.relations, blocks), blocks * b))
    trivial = hnf_basis(_block_rows(n.relations, a), nvars)
    coords = [valid.coordinates(r) for r in trivial.basis]
    if not valid.basis:
        return (), []
    diag, _, right, right_inv = snf_full(coords, valid.rank) if coords else (
        [], None, identity(valid.rank), identity(valid.rank))
    diag = list(diag) + [0] * (valid.rank - len(diag))
    new_basis = mat_mul(right_inv, valid.basis)
    factors, homs = [], []
    for d, row in zip(diag, new_basis):
        if d == 1:
            continue
        factors.append(d)
        mat = tuple(tuple(row[i * b:(i + 1) * b]) for i in range(a))
        homs.append(ModuleHom(m, n, mat))
    return tuple(factors), homs


def hom_is_trivial(m: FgModule, n: FgModule) -> bool:
    return not hom_group(m, n)[0]


def module_size_bits(m: FgModule) -> int:
    return sum(d.bit_length() for d in invariant_factors(m))


def gcd_list(xs) -> int:
    return math.gcd(*xs) if xs else 0
