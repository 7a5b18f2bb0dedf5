"""Envelopes of submodules, envelope chains and radicals.

The envelope E_M(N) = {a·m : a^k·m ∈ N for some k} is computed as the
preimage of the envelope of zero in M/N.  The generated submodule
⟨E_Q(0)⟩ of Q = M/N is found by one of four strategies:

* PRIMARY_DECOMPOSITION: over Z and Z/n it is Σ_p p·Γ_p(Q), p running over
  primes dividing the torsion exponent.
* SCALAR_REDUCTION: over a monic algebra whose generator acts on Q as an
  integer c, every ring element acts as an integer, so Q is a Z-module.
* FINITE_ENUMERATION: Q finite, so R/Ann(Q) is finite and the sum of
  a·Γ_a(Q) over its representatives is exhaustive.
* BOUNDED_SEARCH: the remaining case (infinite Q over an algebra).  The
  torsion part is handled exactly; the free part only by elements of bounded
  coefficient height.  Such results are sound but not certified complete.

Every generator that enlarges N carries a Certificate (a, m, k) that can be
rechecked with :func:`verify_certificate`.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field

from .errors import UnsupportedRing
from .lattice import (
    IntLattice,
    hnf_basis,
    mat_mul,
    mat_pow,
    member,
    right_kernel_matrix,
    row_rank,
    saturation,
    vec_mat,
)
from .modules import (
    DEFAULT_ENUMERATION_CAP,
    Element,
    FgModule,
    ModuleHom,
    Submodule,
    a_gamma,
    annihilator_and_reduce,
    as_module,
    gamma_with_exponent,
    image,
    invariant_factors,
    preimage,
    quotient,
    ring_representatives,
    span_submodule,
    torsion_exponent,
)
from .rings import RingElem, factor_int, is_prime as int_is_prime

log = logging.getLogger(__name__)

DEFAULT_SEARCH_HEIGHT = 8
DEFAULT_MAX_STEPS = 16


class Strategy(str, enum.Enum):
    PRIMARY_DECOMPOSITION = "PrimaryDecomposition"
    SCALAR_REDUCTION = "ScalarReduction"
    FINITE_ENUMERATION = "FiniteEnumeration"
    BOUNDED_SEARCH = "BoundedSearch"


CERTIFIED_STRATEGIES = {
    Strategy.PRIMARY_DECOMPOSITION,
    Strategy.SCALAR_REDUCTION,
    Strategy.FINITE_ENUMERATION,
}


@dataclass(frozen=True)
class Certificate:
    """Witness that ``product = a·m`` lies in E_M(N): a^k·m ∈ N."""

    a: RingElem
    m: Element
    k: int
    product: Element


@dataclass(frozen=True)
class EnvelopeResult:
    submodule: Submodule
    certificates: tuple[Certificate, ...]
    certified_complete: bool
    strategy: Strategy


@dataclass(frozen=True)
class ChainResult:
    terms: tuple[Submodule, ...]
    terminated: bool
    termination_index: int | None
    certified: bool
    steps: tuple[EnvelopeResult, ...] = field(default=(), compare=False)


def verify_certificate(m: FgModule, n: Submodule, cert: Certificate) -> bool:
    rho = m.scalar_matrix(cert.a)
    if m.element(vec_mat(cert.m.coords, rho)) != cert.product:
        return False
    power = vec_mat(cert.m.coords, mat_pow(rho, cert.k))
    return cert.k >= 1 and member(n.lattice, power)


# -- strategies on Q = M/N; lattices live in the shared ambient Z^n ----------

def _primary(q: FgModule):
    e = torsion_exponent(q)
    gens, certs = [], []
    for p in sorted(factor_int(e)):
        a = q.ring.elem(p)
        g, k = gamma_with_exponent(q, a)
        for row in g.lattice.basis:
            prod = tuple(p * x for x in row)
            if not member(q.relations, prod):
                gens.append(prod)
                certs.append((a, row, max(k, 1), prod))
    return hnf_basis(list(q.relations.basis) + gens, q.ambient_rank), certs


def _accumulate(q: FgModule, lat: IntLattice, a: RingElem, certs: list) -> IntLattice:
    g, k = gamma_with_exponent(q, a)
    rho = q.scalar_matrix(a)
    new = []
    for row in g.lattice.basis:
        prod = vec_mat(row, rho)
        if not member(lat, prod):
            new.append(prod)
            certs.append((a, row, max(k, 1), prod))
            lat = hnf_basis(lat.basis + (prod,), lat.ambient_rank)
    return lat


def _finite(q: FgModule, cap: int):
    lat = q.relations
    certs: list = []
    for a in ring_representatives(q, cap):
        if a.is_zero():
            continue
        lat = _accumulate(q, lat, a, certs)
    # a sum of submodules is already action-closed
    return lat, certs


def _height_box(ring, height: int):
    """Nonzero ring elements of coefficient height <= height, one per ± pair."""
    d = ring.rank
    seen = set()
    for h in range(1, height + 1):
        for c in itertools.product(range(-h, h + 1), repeat=d):
            if max(abs(x) for x in c) != h:
                continue
            first = next(x for x in c if x)
            if first < 0:
                continue
            a = ring.elem(c)
            if a.coeffs not in seen:
                seen.add(a.coeffs)
                yield a


def _bounded(q: FgModule, height: int, cap: int):
    n = q.ambient_rank
    torsion = saturation(q.relations)
    lat = q.relations
    certs: list = []
    if torsion != q.relations:
        t_mod, emb = as_module(Submodule(q, torsion))
        t_lat, t_certs, _, _ = _zero_envelope(t_mod, height, cap)
        lat = hnf_basis(lat.basis + tuple(vec_mat(r, emb) for r in t_lat.basis), n)
        for a, row, k, prod in t_certs:
            certs.append((a, vec_mat(row, emb), k, vec_mat(prod, emb)))
    free_rank = n - q.relations.rank
    kernel = right_kernel_matrix(q.relations.basis, n)
    for a in _height_box(q.ring, height):
        rho = q.scalar_matrix(a)
        # a injective on the free quotient: Γ_a(Q) is torsion, already covered
        if row_rank(mat_mul(rho, kernel), free_rank) == free_rank:
            continue
        lat = _accumulate(q, lat, a, certs)
    return lat, certs


def _zero_envelope(q: FgModule, height: int, cap: int):
    """⟨E_Q(0)⟩ as a lattice, raw certificates, strategy, completeness."""
    if not q.ring.is_monic_algebra:
        lat, certs = _primary(q)
        return lat, certs, Strategy.PRIMARY_DECOMPOSITION, True
    _, reduced = annihilator_and_reduce(q)
    if reduced is not None:
        lat, certs = _primary(reduced)
        lifted = [(q.ring.elem(a.lift), row, k, prod) for a, row, k, prod in certs]
        return lat, lifted, Strategy.SCALAR_REDUCTION, True
    if q.is_finite():
        lat, certs = _finite(q, cap)
        return lat, certs, Strategy.FINITE_ENUMERATION, True
    lat, certs = _bounded(q, height, cap)
    return lat, certs, Strategy.BOUNDED_SEARCH, False


def envelope(
    m: FgModule,
    n: Submodule,
    search_height: int = DEFAULT_SEARCH_HEIGHT,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> EnvelopeResult:
    """⟨E_M(N)⟩ with certificates, computed through M/N."""
    q, proj = quotient(m, n)
    lat, raw, strategy, complete = _zero_envelope(q, search_height, cap)
    sub = preimage(proj, Submodule(q, lat))
    certs = tuple(
        Certificate(a, Element(tuple(row)), k, m.element(prod)) for a, row, k, prod in raw
    )
    log.debug("envelope via %s: %d certificates", strategy.value, len(certs))
    return EnvelopeResult(sub, certs, complete, strategy)


def envelope_chain(
    m: FgModule,
    n: Submodule,
    max_steps: int = DEFAULT_MAX_STEPS,
    search_height: int = DEFAULT_SEARCH_HEIGHT,
) -> ChainResult:
    """N ⊆ ⟨E_1(N)⟩ ⊆ ⟨E_2(N)⟩ ⊆ ... until two consecutive terms agree.

    ``terms`` ends at the terminal term, so a chain terminating at index i
    has i + 1 terms.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    terms = [n]
    steps = []
    certified = True
    for _ in range(max_steps):
        res = envelope(m, terms[-1], search_height)
        steps.append(res)
        certified = certified and res.certified_complete
        if res.submodule == terms[-1]:
            return ChainResult(tuple(terms), True, len(terms) - 1, certified, tuple(steps))
        terms.append(res.submodule)
    return ChainResult(tuple(terms), False, None, False, tuple(steps))


def semiprime_radical(
    m: FgModule, n: Submodule, max_steps: int = DEFAULT_MAX_STEPS, search_height: int = DEFAULT_SEARCH_HEIGHT
) -> tuple[Submodule, bool]:
    chain = envelope_chain(m, n, max_steps, search_height)
    return chain.terms[-1], chain.terminated and chain.certified


def prime_radical(m: FgModule, n: Submodule) -> Submodule:
    """β(N).  Over Z and Z/n this is ⟨E_1(N)⟩; otherwise the finite oracle path."""
    if not m.ring.is_monic_algebra:
        return envelope(m, n).submodule
    q, _ = quotient(m, n)
    if q.is_finite():
        from .oracles import oracle_radicals

        return oracle_radicals(m, n)[1]
    raise UnsupportedRing(f"prime radical over {m.ring} needs a finite quotient")


def is_semiprime(m: FgModule, n: Submodule) -> bool | None:
    """True/False, or None when the envelope is not certified complete."""
    if not n.is_proper():
        return False
    res = envelope(m, n)
    if res.submodule != n:
        return False
    return True if res.certified_complete else None


def _prime_over_z(q: FgModule) -> bool:
    inv = invariant_factors(q)
    if all(d == 0 for d in inv):
        return True
    if any(d == 0 for d in inv):
        return False
    return len(set(inv)) == 1 and int_is_prime(inv[0])


def is_prime(m: FgModule, n: Submodule) -> bool | None:
    """Primality of a proper submodule; None when undecidable here."""
    if not n.is_proper():
        return False
    q, _ = quotient(m, n)
    if not q.ring.is_monic_algebra:
        return _prime_over_z(q)
    _, reduced = annihilator_and_reduce(q)
    if reduced is not None:
        return _prime_over_z(reduced)
    if q.is_finite():
        from .oracles import oracle_is_prime

        return oracle_is_prime(m, n)
    return None


def largest_nil_submodule(m: FgModule, search_height: int = DEFAULT_SEARCH_HEIGHT) -> EnvelopeResult:
    return envelope(m, m.zero_submodule, search_height)


def is_nilpotent_element(m: FgModule, x) -> bool | None:
    res = largest_nil_submodule(m)
    if tuple(x) in res.submodule:
        return True
    return False if res.certified_complete else None


class ModuleClass(str, enum.Enum):
    NIL = "Nil"
    REDUCED = "Reduced"
    MIXED = "Mixed"
    UNKNOWN = "Unknown"


def classify_module(m: FgModule) -> tuple[ModuleClass, EnvelopeResult]:
    res = largest_nil_submodule(m)
    if res.submodule.is_whole():
        return ModuleClass.NIL, res
    if not res.certified_complete:
        return ModuleClass.UNKNOWN, res
    if res.submodule.is_zero():
        return ModuleClass.REDUCED, res
    return ModuleClass.MIXED, res


@dataclass(frozen=True)
class TorsionSplit:
    nil_part: Submodule
    quotient: FgModule
    quotient_reduced: bool


def torsion_split(m: FgModule) -> TorsionSplit:
    """Nil part and reduced quotient over the radical-formula rings Z, Z/n."""
    if m.ring.is_monic_algebra:
        raise UnsupportedRing("torsion_split is available over Z and Z/n")
    t = largest_nil_submodule(m).submodule
    q, _ = quotient(m, t)
    inner = largest_nil_submodule(q)
    return TorsionSplit(t, q, inner.certified_complete and inner.submodule.is_zero())


def naturality_check(h: ModuleHom) -> tuple[bool | None, Element | None]:
    """Check h(⟨E_src(0)⟩) ⊆ ⟨E_tgt(0)⟩; return a violating image if any."""
    src = largest_nil_submodule(h.source)
    tgt = largest_nil_submodule(h.target)
    for row in src.submodule.generators:
        img = h(row)
        if img not in tgt.submodule:
            if tgt.certified_complete:
                return False, Element(img)
            return None, Element(img)
    if src.certified_complete and tgt.certified_complete:
        return True, None
    return None, None


def envelope_image(h: ModuleHom) -> tuple[Submodule, Submodule]:
    """(h(F(source)), F(target)) for the envelope functor F."""
    src = largest_nil_submodule(h.source).submodule
    tgt = largest_nil_submodule(h.target).submodule
    return image(h, src), tgt


@dataclass(frozen=True)
class IdempotencyProbe:
    f_m: Submodule
    f_f_m_in_m: Submodule
    f_m_invariants: tuple[int, ...]
    f_f_m_invariants: tuple[int, ...]
    chain_level_idempotent: bool
    module_level_idempotent: bool


def idempotency_probe(m: FgModule) -> IdempotencyProbe:
    """Compare F(M) with F(F(M)) at the chain level and as standalone modules.

    Chain level: ⟨E_M(⟨E_M(0)⟩)⟩ = ⟨E_M(0)⟩ inside M.  Module level: the
    envelope of zero in F(M) presented on its own, mapped back into M.
    """
    f_m = largest_nil_submodule(m).submodule
    second = envelope(m, f_m).submodule
    sub_mod, emb = as_module(f_m)
    inner = largest_nil_submodule(sub_mod).submodule
    back = span_submodule(m, (vec_mat(r, emb) for r in inner.generators))
    f_inv = invariant_factors(sub_mod)
    ff_inv = invariant_factors(as_module(back)[0])
    return IdempotencyProbe(f_m, back, f_inv, ff_inv, second == f_m, back == f_m)


def locally_nilradicals_sum(m: FgModule) -> Submodule:
    """Σ_a a·Γ_a(M) over all representatives of R/Ann(M) (finite M)."""
    total = m.zero_submodule
    for a in ring_representatives(m):
        total = total + a_gamma(m, a)
    return total


__all__ = [
    "Certificate",
    "ChainResult",
    "EnvelopeResult",
    "IdempotencyProbe",
    "ModuleClass",
    "Strategy",
    "TorsionSplit",
    "classify_module",
    "envelope",
    "envelope_chain",
    "envelope_image",
    "idempotency_probe",
    "is_nilpotent_element",
    "is_prime",
    "is_semiprime",
    "largest_nil_submodule",
    "locally_nilradicals_sum",
    "naturality_check",
    "prime_radical",
    "semiprime_radical",
    "torsion_split",
    "verify_certificate",
]
