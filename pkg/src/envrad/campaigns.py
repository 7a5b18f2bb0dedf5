"""Seeded property campaigns.

Each suite draws ``cases`` random instances from ``random.Random(seed)``
and checks one invariant.  Failures are reported verbatim; the smallest
failing instance (by ambient rank, then module size) is singled out.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from . import random_instances as ri
from .checks import iso_agamma_check, prop_env_check
from .envelope import (
    envelope,
    envelope_chain,
    is_nilpotent_element,
    largest_nil_submodule,
    locally_nilradicals_sum,
    naturality_check,
    prime_radical,
    semiprime_radical,
    torsion_split,
)
from .modules import FgModule, Submodule, element_tuples, hom_is_trivial, as_module, quotient
from .oracles import (
    additive_closure,
    oracle_envelope,
    oracle_nilpotent_set,
    oracle_radicals,
    SUBMODULE_ENUMERATION_CAP,
    submodule_elements,
)
from .serialize import module_to_json, submodule_to_json

log = logging.getLogger(__name__)

ZMOD_SIZE_CAP = 1500
RADICAL_ORACLE_CAP = SUBMODULE_ENUMERATION_CAP


@dataclass
class CampaignResult:
    suite: str
    seed: int
    cases: int
    passed: bool
    failures: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def counterexample(self) -> dict[str, Any] | None:
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: (f.get("rank", 0), f.get("size") or 0))


def _case(m: FgModule, **extra) -> dict[str, Any]:
    out = {"module": module_to_json(m), "rank": m.ambient_rank, "size": m.cardinality()}
    for k, v in extra.items():
        out[k] = submodule_to_json(v) if isinstance(v, Submodule) else v
    return out


def _oracle_equivalence(rng, stats):
    m = ri.zmod_module(rng, size_cap=ZMOD_SIZE_CAP)
    n = ri.random_submodule(rng, m)
    problems = []
    env = envelope(m, n)
    truth = additive_closure(m, oracle_envelope(m, n))
    if submodule_elements(env.submodule) != truth or not env.certified_complete:
        problems.append("envelope")
    q, _ = quotient(m, n)
    if q.cardinality() <= RADICAL_ORACLE_CAP:
        s_true, b_true = oracle_radicals(m, n)
        s, cert = semiprime_radical(m, n)
        if s != s_true or not cert:
            problems.append("semiprime_radical")
        if prime_radical(m, n) != b_true:
            problems.append("prime_radical")
        stats["radical_oracle_cases"] = stats.get("radical_oracle_cases", 0) + 1
    nil = {x for x in element_tuples(m) if is_nilpotent_element(m, x)}
    if nil != oracle_nilpotent_set(m):
        problems.append("nilpotent_set")
    return problems, _case(m, submodule=n)


def _naturality(rng, stats):
    a, b = ri.same_ring_pair(rng)
    h = ri.random_hom(rng, a, b)
    ok, witness = naturality_check(h)
    problems = [] if ok is True else [f"naturality ok={ok} witness={witness}"]
    return problems, _case(a, target=module_to_json(b), matrix=[list(r) for r in h.matrix])


def _chain_idempotency(rng, stats):
    m = ri.z_group(rng) if rng.random() < 0.5 else ri.zmod_module(rng)
    chain = envelope_chain(m, m.zero_submodule)
    f1 = largest_nil_submodule(m).submodule
    problems = []
    if envelope(m, f1).submodule != f1:
        problems.append("E2(0) != E1(0)")
    if not chain.certified or (chain.termination_index or 0) > 1:
        problems.append(f"termination index {chain.termination_index}")
    q, _ = quotient(m, f1)
    inner = largest_nil_submodule(q)
    if not (inner.submodule.is_zero() and inner.certified_complete):
        problems.append("quotient not reduced")
    return problems, _case(m)


def _sigma_identity(rng, stats):
    m = ri.finite_module(rng, size_cap=600)
    nil = largest_nil_submodule(m)
    problems = []
    enumerated = oracle_nilpotent_set(m)
    if submodule_elements(nil.submodule) != enumerated:
        problems.append("nil submodule != enumerated nilpotent set")
    if locally_nilradicals_sum(m) != nil.submodule:
        problems.append("sum of a_gamma != envelope of zero")
    return problems, _case(m)


def _iso_agamma(rng, stats):
    m = ri.any_module(rng)
    a = ri.interesting_ring_elem(rng, m)
    rep = iso_agamma_check(m, a)
    if rep.details["a_gamma_invariants"]:
        stats["nontrivial_a_gamma"] = stats.get("nontrivial_a_gamma", 0) + 1
    return ([] if rep.passed else [f"iso-agamma {rep.details}"]), _case(m, a=list(a.coeffs))


def _prop_env(rng, stats):
    m = ri.finite_module(rng, size_cap=400)
    n = ri.random_submodule(rng, m)
    problems = []
    for i in (1, 2):
        rep = prop_env_check(m, n, i)
        if not rep.passed:
            problems.append(f"prop-env i={i} {rep.details}")
    return problems, _case(m, submodule=n)


def _radical_formula_z(rng, stats):
    m = ri.z_group(rng)
    n = ri.random_submodule(rng, m)
    e1 = envelope(m, n)
    e2 = envelope(m, e1.submodule)
    problems = []
    if e2.submodule != e1.submodule or not (e1.certified_complete and e2.certified_complete):
        problems.append("<E1(N)> != <E2(N)>")
    q, _ = quotient(m, n)
    if q.is_finite():
        stats["finite_quotients"] = stats.get("finite_quotients", 0) + 1
    if q.is_finite() and q.cardinality() <= RADICAL_ORACLE_CAP:
        s_true, b_true = oracle_radicals(m, n)
        if e1.submodule != s_true:
            problems.append("S(N) oracle mismatch")
        if e1.submodule != b_true:
            problems.append("beta(N) oracle mismatch")
        stats["finite_oracle_cases"] = stats.get("finite_oracle_cases", 0) + 1
    return problems, _case(m, submodule=n)


def _torsion_split(rng, stats):
    m = ri.z_group(rng) if rng.random() < 0.5 else ri.zmod_module(rng)
    split = torsion_split(m)
    problems = []
    if not split.quotient_reduced:
        problems.append("M/F(M) not reduced")
    beta = prime_radical(m, m.zero_submodule)
    for g in beta.generators:
        if is_nilpotent_element(m, g) is not True:
            problems.append(f"beta generator {g} not nilpotent")
    # Hom(T, F) = 0 for the nil part T and the reduced quotient F
    t_mod, _ = as_module(split.nil_part)
    nil_t = largest_nil_submodule(t_mod).submodule
    if nil_t.is_whole() and not hom_is_trivial(t_mod, split.quotient):
        problems.append("Hom(T, F) nonzero")
    return problems, _case(m)


SUITES: dict[str, Callable] = {
    "oracle-equivalence": _oracle_equivalence,
    "naturality": _naturality,
    "chain-idempotency": _chain_idempotency,
    "sigma-identity": _sigma_identity,
    "iso-agamma": _iso_agamma,
    "prop-env": _prop_env,
    "radical-formula-z": _radical_formula_z,
    "torsion-split": _torsion_split,
}


def random_check(suite: str, seed: int, cases: int) -> CampaignResult:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    rng = random.Random(seed)
    result = CampaignResult(suite, seed, cases, True)
    if cases == 0:
        result.warnings.append("zero cases requested; vacuous pass")
        log.warning("%s: zero cases requested; vacuous pass", suite)
        return result
    for i in range(cases):
        problems, case = SUITES[suite](rng, result.stats)
        if problems:
            case["case"] = i
            case["problems"] = problems
            result.failures.append(case)
            log.warning("%s case %d failed: %s", suite, i, problems)
    result.passed = not result.failures
    return result
