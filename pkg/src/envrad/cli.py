"""Command-line entry point: ``envrad <command> [options]``.

Exit codes: 0 success, 1 computational failure (caps, unsupported ring,
failed claim or campaign), 2 invalid input, 3 an uncertified result under
``--require-certified``.  Errors are JSON objects on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__
from .campaigns import SUITES, random_check
from .checks import chain_invariance_check, iso_agamma_check, prop_env_check, theorem_rad_check
from .envelope import (
    DEFAULT_MAX_STEPS,
    DEFAULT_SEARCH_HEIGHT,
    classify_module,
    envelope,
    envelope_chain,
    largest_nil_submodule,
    prime_radical,
    semiprime_radical,
)
from .errors import ActionNotCompatible, EnvradError, InvalidInput, ModulusViolated
from .modules import FgModule, Submodule
from .oracles import additive_closure, oracle_all_submodules, oracle_envelope, oracle_nilpotent_set, oracle_radicals
from .rings import RingElem
from .serialize import (
    chain_to_json,
    dump_matrix,
    dump_vec,
    envelope_result_to_json,
    jsonable,
    module_from_json,
    submodule_from_json,
)
from .verify import default_corpus, format_table, verify_paper

EXIT_OK, EXIT_FAILURE, EXIT_INVALID, EXIT_UNCERTIFIED = 0, 1, 2, 3

log = logging.getLogger("envrad")


class UsageError(InvalidInput):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own; route through the JSON error path instead
    def error(self, message):
        raise UsageError(message)


class _Job:
    """Parsed inputs plus their digests, loaded before any computation."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.digests: dict[str, str] = {}
        self.module: FgModule | None = None
        self.submodule: Submodule | None = None
        if getattr(args, "module", None):
            self.module = module_from_json(self._read("module", args.module))
        if getattr(args, "submodule", None):
            if self.module is None:
                raise UsageError("--submodule needs --module")
            self.submodule = submodule_from_json(self.module, self._read("submodule", args.submodule))

    def _read(self, role: str, path: str) -> Any:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise InvalidInput(f"cannot read {role} file {path}: {exc.strerror}")
        self.digests[role] = hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"{role} file {path} is not valid JSON: {exc}")

    def need_module(self) -> FgModule:
        if self.module is None:
            raise UsageError("--module is required")
        return self.module

    def need_pair(self) -> tuple[FgModule, Submodule]:
        m = self.need_module()
        return m, self.submodule if self.submodule is not None else m.zero_submodule

    def ring_elem(self) -> RingElem:
        m = self.need_module()
        if self.args.a is None:
            raise UsageError("--a is required")
        try:
            coeffs = [int(x) for x in self.args.a.split(",")]
        except ValueError:
            raise UsageError(f"--a must be comma-separated integers, got {self.args.a!r}")
        if len(coeffs) > m.ring.rank:
            raise UsageError(f"--a has {len(coeffs)} coefficients, ring rank is {m.ring.rank}")
        return m.ring.elem(coeffs + [0] * (m.ring.rank - len(coeffs)))


def _hnf(s: Submodule) -> list[list[str]]:
    return dump_matrix(s.generators)


def _elements(xs) -> list[list[str]]:
    return [dump_vec(x) for x in sorted(xs)]


# Each handler returns (result payload, certified flag or None, passed flag or None).


def _cmd_envelope(job: _Job):
    m, n = job.need_pair()
    res = envelope(m, n, job.args.search_height)
    return envelope_result_to_json(res), res.certified_complete, None


def _cmd_chain(job: _Job):
    m, n = job.need_pair()
    chain = envelope_chain(m, n, job.args.max_steps, job.args.search_height)
    out = chain_to_json(chain)
    out["submodule_hnf"] = out["chain"][-1]
    return out, chain.certified and chain.terminated, None


def _cmd_sradical(job: _Job):
    m, n = job.need_pair()
    s, certified = semiprime_radical(m, n, job.args.max_steps, job.args.search_height)
    return {"submodule_hnf": _hnf(s), "certified": certified}, certified, None


def _cmd_pradical(job: _Job):
    m, n = job.need_pair()
    return {"submodule_hnf": _hnf(prime_radical(m, n)), "certified": True}, True, None


def _cmd_nilpart(job: _Job):
    res = largest_nil_submodule(job.need_module(), job.args.search_height)
    return envelope_result_to_json(res), res.certified_complete, None


def _cmd_classify(job: _Job):
    cls, res = classify_module(job.need_module())
    out = {"class": cls.value, "nil_part": _hnf(res.submodule), "certified": res.certified_complete}
    return out, res.certified_complete, None


def _cmd_check(job: _Job):
    kind = job.args.kind
    if kind == "prop-env":
        m, n = job.need_pair()
        rep = prop_env_check(m, n, job.args.i, job.args.search_height)
    elif kind == "chain-invariance":
        m, n = job.need_pair()
        rep = chain_invariance_check(m, n, job.args.max_steps, job.args.search_height)
    elif kind == "theorem-rad":
        a = job.ring_elem() if job.args.a is not None else None
        rep = theorem_rad_check(job.need_module(), a)
    else:
        rep = iso_agamma_check(job.need_module(), job.ring_elem())
    certified = rep.details.get("certified", rep.details.get("chain_certified"))
    return {"check": rep.name, "passed": rep.passed, "details": jsonable(rep.details)}, certified, rep.passed


def _cmd_oracle(job: _Job):
    kind = job.args.kind
    if kind == "envelope":
        m, n = job.need_pair()
        raw = oracle_envelope(m, n)
        out = {"elements": _elements(raw), "generated": _elements(additive_closure(m, raw))}
    elif kind == "submodules":
        subs = oracle_all_submodules(job.need_module())
        out = {"count": len(subs), "submodules": [_hnf(s) for s in subs]}
    elif kind == "radicals":
        m, n = job.need_pair()
        s, b = oracle_radicals(m, n)
        out = {"semiprime_radical": _hnf(s), "prime_radical": _hnf(b)}
    else:
        out = {"elements": _elements(oracle_nilpotent_set(job.need_module()))}
    return out, True, None


def _cmd_verify_paper(job: _Job):
    outcomes = verify_paper(job.args.corpus or default_corpus())
    rows = [
        {"claim": o.id, "kind": o.kind, "passed": o.passed, "expected": o.expected, "actual": o.actual, "notes": o.notes}
        for o in outcomes
    ]
    job.text = format_table(outcomes)
    return {"claims": rows}, None, all(o.passed for o in outcomes)


def _cmd_random_check(job: _Job):
    a = job.args
    res = random_check(a.suite, a.seed, a.cases)
    out = {
        "suite": res.suite,
        "seed": res.seed,
        "cases": res.cases,
        "passed": res.passed,
        "failures": len(res.failures),
        "counterexample": res.counterexample,
        "warnings": res.warnings,
        "stats": res.stats,
    }
    return out, None, res.passed


HANDLERS = {
    "envelope": _cmd_envelope,
    "chain": _cmd_chain,
    "sradical": _cmd_sradical,
    "pradical": _cmd_pradical,
    "nilpart": _cmd_nilpart,
    "classify": _cmd_classify,
    "check": _cmd_check,
    "oracle": _cmd_oracle,
    "verify-paper": _cmd_verify_paper,
    "random-check": _cmd_random_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--module", help="module JSON file")
    common.add_argument("--submodule", help="submodule JSON file (default: zero)")
    common.add_argument("--search-height", type=int, default=DEFAULT_SEARCH_HEIGHT)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    common.add_argument("--require-certified", action="store_true", help="exit 3 on uncertified results")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="envrad", description="Envelopes, semiprime and prime radicals of f.g. modules.")
    parser.add_argument("--version", action="version", version=f"envrad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("envelope", "chain", "sradical", "pradical", "nilpart", "classify"):
        sub.add_parser(name, parents=[common])
    check = sub.add_parser("check", parents=[common])
    check.add_argument("kind", choices=("prop-env", "chain-invariance", "theorem-rad", "iso-agamma"))
    check.add_argument("--i", type=int, default=1, help="chain index for prop-env")
    check.add_argument("--a", help="ring element as comma-separated coefficients")
    oracle = sub.add_parser("oracle", parents=[common])
    oracle.add_argument("kind", choices=("envelope", "submodules", "radicals", "nilpotent"))
    verify = sub.add_parser("verify-paper", parents=[common])
    verify.add_argument("--corpus", help="corpus directory (default: the shipped corpus)")
    rc = sub.add_parser("random-check", parents=[common])
    rc.add_argument("--suite", required=True, choices=sorted(SUITES))
    rc.add_argument("--seed", type=int, default=0)
    rc.add_argument("--cases", type=int, default=100)
    return parser


def _error(exc: Exception, code: int) -> int:
    obj: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, (ActionNotCompatible, ModulusViolated)) and exc.witness is not None:
        obj["witness"] = jsonable(exc.witness)
    sys.stderr.write(json.dumps(obj, sort_keys=True) + "\n")
    return code


def _text(report: dict[str, Any], job: _Job) -> str:
    if getattr(job, "text", None):
        return job.text
    lines = [f"envrad {report['version']} {report['command']}"]
    for key, value in report["result"].items():
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error(exc, EXIT_INVALID)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        job = _Job(args)
        t0 = time.perf_counter()
        payload, certified, passed = HANDLERS[args.command](job)
        elapsed = time.perf_counter() - t0
    except InvalidInput as exc:
        return _error(exc, EXIT_INVALID)
    except EnvradError as exc:
        return _error(exc, EXIT_FAILURE)

    options = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "module", "submodule", "corpus", "verbose")}
    report: dict[str, Any] = {
        "tool": "envrad",
        "version": __version__,
        "command": args.command,
        "options": options,
        "inputs": job.digests,
        "result": payload,
        "certified": certified,
    }
    if args.timing:
        report["seconds"] = round(elapsed, 3)
    if args.output == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_text(report, job) + "\n")

    if passed is False:
        return EXIT_FAILURE
    if args.require_certified and certified is False:
        return EXIT_UNCERTIFIED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
