import json
from pathlib import Path

import pytest

from laxdual.corpus import handcrafted_instances, handcrafted_smcs, strat_instances
from laxdual.errors import SchemaError
from laxdual.monoidal import lax_functors_equal
from laxdual.serialize import (
    canonical,
    digest,
    dump_laxlimit_instance,
    dump_smc,
    dump_stratification,
    load_document,
    load_path,
    read_json,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def same_smc(a, b):
    return (
        a.n_objects == b.n_objects
        and a.n_morphisms == b.n_morphisms
        and dump_smc(a) == dump_smc(b)
    )


def test_smc_round_trip():
    for m in handcrafted_smcs():
        doc = dump_smc(m)
        schema, back = load_document(json.loads(json.dumps(doc)))
        assert schema == "smc/v1" and same_smc(m, back)


def test_laxlimit_round_trip():
    for inst in handcrafted_instances()[:20]:
        doc = dump_laxlimit_instance(inst.phi)
        _, phi = load_document(json.loads(json.dumps(doc)))
        assert dump_laxlimit_instance(phi) == doc
        assert phi.is_strict == inst.phi.is_strict


def test_stratification_round_trip():
    for inst in strat_instances()[::5]:
        doc = dump_stratification(inst.strat)
        _, s = load_document(json.loads(json.dumps(doc)))
        assert dump_stratification(s) == doc
        assert set(s.monodromy) == set(inst.strat.monodromy)
        for k in s.monodromy:
            assert s.monodromy[k].obj_map == inst.strat.monodromy[k].obj_map


def test_unknown_keys_rejected():
    doc = dump_smc(handcrafted_smcs()[0])
    doc["extra"] = 1
    with pytest.raises(SchemaError):
        load_document(doc)
    inst = dump_laxlimit_instance(handcrafted_instances()[0].phi)
    inst["phi"]["bogus"] = []
    with pytest.raises(SchemaError):
        load_document(inst)


def test_schema_dispatch_errors():
    with pytest.raises(SchemaError):
        load_document({"schema": "nope/v9"})
    with pytest.raises(SchemaError):
        load_document([1, 2])
    phi = dump_laxlimit_instance(handcrafted_instances()[0].phi)["phi"]
    with pytest.raises(SchemaError):
        load_document(dict(phi, schema="laxfun/v1"))


def test_digest_stable_under_key_order():
    doc = dump_smc(handcrafted_smcs()[1])
    shuffled = json.loads(json.dumps(doc, sort_keys=False))
    reordered = dict(reversed(list(shuffled.items())))
    assert digest(doc) == digest(reordered)
    assert canonical(doc) == canonical(reordered)
    assert digest(doc) != digest(dict(doc, name="other"))


def test_shipped_instances_load():
    for p in sorted(INSTANCES.glob("*.json")):
        if p.name == "malformed.json":
            with pytest.raises(SchemaError):
                read_json(str(p))
            continue
        schema, value, raw = load_path(str(p))
        assert raw["schema"] == schema


def test_missing_theta_derived():
    _, s, _ = load_path(str(INSTANCES / "chain2_worked.json"))
    assert set(s.theta) == {(0, 1, 2)}
    _, signs, _ = load_path(str(INSTANCES / "chain3_signs.json"))
    assert signs.has_nontrivial_theta
    assert all(lax_functors_equal(signs.monodromy[k], signs.monodromy[k]) for k in signs.monodromy)
