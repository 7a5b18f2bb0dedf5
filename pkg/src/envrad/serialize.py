"""JSON schemas for rings, modules, submodules and results.

Matrix and vector entries are written as decimal strings so consumers with
64-bit integers cannot overflow; both strings and JSON integers are read.
"""

from __future__ import annotations

from typing import Any

from .errors import InvalidInput
from .modules import FgModule, Submodule, span_submodule, validate_module
from .rings import INTEGERS, INTEGERS_MOD, MONIC_ALGEBRA, Integers, IntegersMod, MonicAlgebra, RingDesc


def _int(x) -> int:
    if isinstance(x, bool):
        raise InvalidInput(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InvalidInput(f"expected an integer, got {x!r}")


def _matrix(rows, ncols: int | None = None) -> list[tuple[int, ...]]:
    if not isinstance(rows, list):
        raise InvalidInput("matrix must be a list of rows")
    out = []
    for r in rows:
        if not isinstance(r, list):
            raise InvalidInput("matrix rows must be lists")
        row = tuple(_int(x) for x in r)
        if ncols is not None and len(row) != ncols:
            raise InvalidInput(f"row {list(row)} should have {ncols} entries")
        out.append(row)
    return out


def dump_vec(v) -> list[str]:
    return [str(int(x)) for x in v]


def dump_matrix(m) -> list[list[str]]:
    return [dump_vec(r) for r in m]


def ring_from_json(d: Any) -> RingDesc:
    if not isinstance(d, dict) or "type" not in d:
        raise InvalidInput("ring must be an object with a 'type'")
    kind = d["type"]
    if kind == INTEGERS:
        return Integers()
    if kind == INTEGERS_MOD:
        return IntegersMod(_int(d.get("n")))
    if kind == MONIC_ALGEBRA:
        mod = d.get("modulus")
        if not isinstance(mod, list):
            raise InvalidInput("monic_algebra needs a 'modulus' coefficient list")
        return MonicAlgebra([_int(c) for c in mod])
    raise InvalidInput(f"unknown ring type {kind!r}")


def ring_to_json(r: RingDesc) -> dict[str, Any]:
    if r.kind == INTEGERS:
        return {"type": INTEGERS}
    if r.kind == INTEGERS_MOD:
        return {"type": INTEGERS_MOD, "n": r.n}
    return {"type": MONIC_ALGEBRA, "modulus": list(r.modulus)}


def module_from_json(d: Any) -> FgModule:
    if not isinstance(d, dict):
        raise InvalidInput("module must be a JSON object")
    for key in ("ring", "ambient_rank"):
        if key not in d:
            raise InvalidInput(f"module is missing {key!r}")
    ring = ring_from_json(d["ring"])
    n = _int(d["ambient_rank"])
    if n < 0:
        raise InvalidInput("ambient_rank must be nonnegative")
    rels = _matrix(d.get("relations", []), n)
    action = d.get("action")
    act = _matrix(action, n) if action is not None else None
    return validate_module(ring, n, rels, act)


def module_to_json(m: FgModule) -> dict[str, Any]:
    out: dict[str, Any] = {
        "ring": ring_to_json(m.ring),
        "ambient_rank": m.ambient_rank,
        "relations": dump_matrix(m.relations.basis),
    }
    if m.action is not None:
        out["action"] = dump_matrix(m.action)
    return out


def submodule_from_json(m: FgModule, d: Any) -> Submodule:
    if not isinstance(d, dict) or "generators" not in d:
        raise InvalidInput("submodule must be an object with 'generators'")
    return span_submodule(m, _matrix(d["generators"], m.ambient_rank))


def submodule_to_json(s: Submodule) -> dict[str, Any]:
    return {"generators": dump_matrix(s.generators)}


def certificate_to_json(c) -> dict[str, Any]:
    return {"a": dump_vec(c.a.coeffs), "m": dump_vec(c.m.coords), "k": c.k, "product": dump_vec(c.product.coords)}


def envelope_result_to_json(res) -> dict[str, Any]:
    return {
        "submodule_hnf": dump_matrix(res.submodule.generators),
        "certified": res.certified_complete,
        "strategy": res.strategy.value,
        "certificates": [certificate_to_json(c) for c in res.certificates],
    }


def chain_to_json(chain) -> dict[str, Any]:
    return {
        "chain": [dump_matrix(t.generators) for t in chain.terms],
        "terminated": chain.terminated,
        "termination_index": chain.termination_index,
        "certified": chain.certified,
        "strategies": [s.strategy.value for s in chain.steps],
    }


def jsonable(x: Any) -> Any:
    """Convert tuples and nested results into plain JSON values."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x
    if hasattr(x, "value"):
        return x.value
    return str(x)
