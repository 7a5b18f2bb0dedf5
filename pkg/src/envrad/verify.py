"""Run the shipped claim corpus and tabulate pass/fail per claim.

A corpus directory holds module and submodule JSON files plus a
``claims.json`` listing claims.  Each claim names a ``kind`` (which runner
computes the actual value), its inputs, and an ``expected`` object that is
compared with the actual value for exact equality.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .campaigns import random_check
from .checks import nilradical_sweep, prop_env_check, theorem_rad_check
from .envelope import Strategy, envelope, envelope_chain, envelope_image, naturality_check, semiprime_radical
from .errors import InvalidInput
from .modules import FgModule, ModuleHom, Submodule, check_hom, make_module
from .rings import Integers, IntegersMod
from .serialize import module_from_json, submodule_from_json

log = logging.getLogger(__name__)


@dataclass
class ClaimOutcome:
    id: str
    kind: str
    passed: bool
    expected: Any
    actual: Any
    seconds: float
    notes: list[str] = field(default_factory=list)


def default_corpus() -> Path:
    return Path(str(resources.files("envrad") / "corpus"))


def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidInput(f"missing corpus file {path.name}")
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path.name}: {exc}")


def load_claims(corpus_dir: Path) -> list[dict[str, Any]]:
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise InvalidInput(f"corpus directory {corpus_dir} does not exist")
    claims_path = corpus_dir / "claims.json"
    if not claims_path.exists():
        raise InvalidInput(f"no claims.json in {corpus_dir}")
    claims = _load_json(claims_path).get("claims")
    if not isinstance(claims, list) or not claims:
        raise InvalidInput("claims.json lists no claims")
    return claims


def _hnf(s: Submodule) -> list[list[int]]:
    return [list(r) for r in s.generators]


class _Inputs:
    def __init__(self, corpus_dir: Path):
        self.dir = corpus_dir

    def module(self, name: str) -> FgModule:
        return module_from_json(_load_json(self.dir / name))

    def pair(self, claim) -> tuple[FgModule, Submodule]:
        m = self.module(claim["module"])
        return m, submodule_from_json(m, _load_json(self.dir / claim["submodule"]))


def _flagship_envelopes(claim, inputs: _Inputs) -> dict[str, Any]:
    m, n = inputs.pair(claim)
    h = claim.get("search_height", 8)
    e1 = envelope(m, n, h).submodule
    e2 = envelope(m, e1, h).submodule
    return {"E1": _hnf(e1), "E2": _hnf(e2), "distinct": e1 != e2}


def _chain_invariance(claim, inputs: _Inputs) -> dict[str, Any]:
    m, n = inputs.pair(claim)
    chain = envelope_chain(m, n)
    top = chain.terms[-1]
    radicals = [semiprime_radical(m, t)[0] for t in chain.terms]
    later = chain.steps[1:]
    return {
        "termination_index": chain.termination_index,
        "terminal": _hnf(top),
        "radicals_equal_terminal": all(r == top for r in radicals),
        "later_steps_certified": all(s.certified_complete for s in later),
        "later_steps_scalar_reduced": all(s.strategy is Strategy.SCALAR_REDUCTION for s in later),
    }


def _campaign(claim, inputs: _Inputs) -> dict[str, Any]:
    res = random_check(claim["suite"], claim["seed"], claim["cases"])
    return {"passed": res.passed}


def _naturality_probe(claim, inputs: _Inputs) -> dict[str, Any]:
    src, tgt = inputs.module(claim["source"]), inputs.module(claim["target"])
    h = ModuleHom(src, tgt, tuple(tuple(r) for r in claim["matrix"]))
    check_hom(h)
    img, f_tgt = envelope_image(h)
    ok, _ = naturality_check(h)
    return {"image": _hnf(img), "target_nil_part": _hnf(f_tgt), "natural": ok, "surjective": img == f_tgt}


def _prop_env(claim, inputs: _Inputs) -> dict[str, Any]:
    m, n = inputs.pair(claim)
    return {"passed": [prop_env_check(m, n, i).passed for i in claim["indices"]]}


def _uniserial_identity(claim, inputs: _Inputs) -> dict[str, Any]:
    failures = []
    for p in claim["primes"]:
        for k in range(1, claim["max_exponent"] + 1):
            for ring in (Integers(), IntegersMod(p**k)):
                m = make_module(ring, 1, [(p**k,)])
                rep = theorem_rad_check(m, ring.elem(p))
                if not rep.passed:
                    failures.append({"p": p, "k": k, "ring": str(ring), "details": str(rep.details)})
    return {"failures": failures}


def _nilradical_sweep(claim, inputs: _Inputs) -> dict[str, Any]:
    return {"failures": [str(b) for b in nilradical_sweep(claim["n_max"])]}


def _envelope(claim, inputs: _Inputs) -> dict[str, Any]:
    m, n = inputs.pair(claim)
    res = envelope(m, n)
    return {"submodule_hnf": _hnf(res.submodule), "certified": res.certified_complete}


RUNNERS: dict[str, Callable[[dict, _Inputs], dict[str, Any]]] = {
    "flagship_envelopes": _flagship_envelopes,
    "chain_invariance": _chain_invariance,
    "campaign": _campaign,
    "naturality_probe": _naturality_probe,
    "prop_env": _prop_env,
    "uniserial_identity": _uniserial_identity,
    "nilradical_sweep": _nilradical_sweep,
    "envelope": _envelope,
}


def run_claim(claim: dict[str, Any], corpus_dir: Path) -> ClaimOutcome:
    kind = claim.get("kind")
    if kind not in RUNNERS:
        raise InvalidInput(f"claim {claim.get('id')!r} has unknown kind {kind!r}")
    t0 = time.perf_counter()
    actual = RUNNERS[kind](claim, _Inputs(Path(corpus_dir)))
    seconds = time.perf_counter() - t0
    # JSON round trip so tuples and lists compare alike
    actual = json.loads(json.dumps(actual))
    expected = claim.get("expected")
    passed = actual == expected
    notes = []
    limit = claim.get("time_limit")
    if limit is not None and seconds >= limit:
        passed = False
        notes.append(f"took {seconds:.1f}s, limit {limit}s")
    log.info("claim %s: %s in %.2fs", claim.get("id"), "pass" if passed else "FAIL", seconds)
    return ClaimOutcome(claim.get("id", "?"), kind, passed, expected, actual, seconds, notes)


def verify_paper(corpus_dir: Path | str | None = None) -> list[ClaimOutcome]:
    corpus_dir = Path(corpus_dir) if corpus_dir is not None else default_corpus()
    return [run_claim(c, corpus_dir) for c in load_claims(corpus_dir)]


def format_table(outcomes: list[ClaimOutcome]) -> str:
    width = max([len(o.id) for o in outcomes] + [5])
    lines = [f"{'claim':<{width}}  result"]
    for o in outcomes:
        lines.append(f"{o.id:<{width}}  {'PASS' if o.passed else 'FAIL'}")
        if not o.passed:
            lines.append(f"{'':<{width}}    expected: {json.dumps(o.expected, sort_keys=True)}")
            lines.append(f"{'':<{width}}    actual:   {json.dumps(o.actual, sort_keys=True)}")
            lines.extend(f"{'':<{width}}    {n}" for n in o.notes)
    return "\n".join(lines)
