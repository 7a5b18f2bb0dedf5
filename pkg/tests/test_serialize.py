import json
import random

import pytest

from envrad import random_instances as ri
from envrad.envelope import envelope, envelope_chain
from envrad.errors import InvalidInput, ModulusViolated
from envrad.serialize import (
    chain_to_json,
    envelope_result_to_json,
    module_from_json,
    module_to_json,
    ring_from_json,
    ring_to_json,
    submodule_from_json,
    submodule_to_json,
)


@pytest.mark.parametrize(
    "ring",
    [{"type": "Z"}, {"type": "Zmod", "n": 12}, {"type": "monic_algebra", "modulus": [0, 0, 1]}],
)
def test_ring_round_trip(ring):
    assert ring_to_json(ring_from_json(ring)) == ring


def test_strings_and_ints_accepted():
    a = module_from_json({"ring": {"type": "Zmod", "n": "12"}, "ambient_rank": "1", "relations": [["12"]]})
    b = module_from_json({"ring": {"type": "Zmod", "n": 12}, "ambient_rank": 1, "relations": [[12]]})
    assert a == b


@pytest.mark.parametrize(
    "bad",
    [
        [],
        {"ring": {"type": "Q"}, "ambient_rank": 1},
        {"ring": {"type": "Z"}},
        {"ring": {"type": "Z"}, "ambient_rank": 2, "relations": [[1]]},
        {"ring": {"type": "Z"}, "ambient_rank": 1, "relations": [["x"]]},
        {"ring": {"type": "Z"}, "ambient_rank": 1, "relations": [[True]]},
        {"ring": {"type": "Z"}, "ambient_rank": -1},
        {"ring": {"type": "monic_algebra", "modulus": [0, 2]}, "ambient_rank": 1, "action": [[0]]},
    ],
)
def test_malformed_modules(bad):
    with pytest.raises(InvalidInput):
        module_from_json(bad)


def test_modulus_violation_is_invalid_input():
    with pytest.raises(ModulusViolated):
        module_from_json({"ring": {"type": "Zmod", "n": 6}, "ambient_rank": 1, "relations": []})


@pytest.mark.parametrize("seed", range(20))
def test_module_and_submodule_round_trip(seed):
    rng = random.Random(seed)
    m = ri.any_module(rng)
    text = json.dumps(module_to_json(m))
    assert module_from_json(json.loads(text)) == m
    n = ri.random_submodule(rng, m)
    res = envelope(m, n)
    again = submodule_from_json(m, {"generators": envelope_result_to_json(res)["submodule_hnf"]})
    assert again == res.submodule
    assert submodule_from_json(m, json.loads(json.dumps(submodule_to_json(n)))) == n


def test_result_schema():
    m = module_from_json({"ring": {"type": "Z"}, "ambient_rank": 1, "relations": [[4]]})
    out = envelope_result_to_json(envelope(m, m.zero_submodule))
    assert out["submodule_hnf"] == [["2"]]
    assert out["certified"] is True
    assert set(out["certificates"][0]) == {"a", "m", "k", "product"}
    chain = chain_to_json(envelope_chain(m, m.zero_submodule))
    assert chain["termination_index"] == 1 and len(chain["chain"]) == 2
