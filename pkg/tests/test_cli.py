import json
from pathlib import Path

import pytest

from laxdual.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def inst(name):
    return INSTANCES / name


@pytest.mark.parametrize(
    "name", ["z2.json", "super_lines.json", "z2_to_chain.json", "chain2_worked.json", "chain3_signs.json", "v_chain2.json"]
)
def test_validate_ok(capsys, name):
    code, out, err = run(capsys, "validate", inst(name))
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and doc["command"] == "validate"
    assert "valid" in err


def test_broken_composition_names_triple(capsys):
    code, out, _ = run(capsys, "validate", inst("broken_composition.json"))
    assert code == 1
    assert "f" in out and "id_a" in out and "id_b" in out


def test_malformed_json_exit_two(capsys):
    code, out, err = run(capsys, "validate", inst("malformed.json"))
    assert code == 2
    assert json.loads(out)["ok"] is False


def test_missing_file_and_bad_usage(capsys, tmp_path):
    assert run(capsys, "validate", tmp_path / "absent.json")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "dualizables", inst("z2.json"), "--method", "guess")[0] == 2
    assert run(capsys, "peel", inst("z2.json"))[0] == 2


def test_size_limit_exit_three(capsys):
    code, out, _ = run(capsys, "dualizables", inst("chain2_worked.json"), "--max-objects", "2")
    assert code == 3


def test_dualizables_zigzag(capsys):
    code, out, _ = run(capsys, "dualizables", inst("z2_to_chain.json"))
    doc = json.loads(out)
    assert code == 0 and doc["n_objects"] == 3 and len(doc["dualizable"]) == 1
    assert doc["disagreements"] == []


def test_output_is_byte_stable(capsys):
    first = run(capsys, "check", inst("chain3_signs.json"))[1]
    second = run(capsys, "check", inst("chain3_signs.json"))[1]
    assert first == second
    assert json.loads(first)["ok"]


@pytest.mark.parametrize("name", ["z2_to_chain.json", "chain2_worked.json", "v_chain2.json"])
def test_check_passes(capsys, name):
    code, out, _ = run(capsys, "check", inst(name), "--bound", "3")
    assert code == 0 and json.loads(out)["ok"]


def test_laxlimit_emits_loadable_smc(capsys, tmp_path):
    from laxdual.serialize import load_path

    code, out, _ = run(capsys, "laxlimit", inst("z2_to_chain.json"))
    assert code == 0
    p = tmp_path / "limit.json"
    p.write_text(json.dumps(json.loads(out)["limit"]))
    schema, m, _ = load_path(str(p))
    assert schema == "smc/v1" and m.n_objects == 3


def test_links_and_peel(capsys):
    code, out, _ = run(capsys, "links", inst("chain2_worked.json"))
    assert code == 0
    code, out, _ = run(capsys, "peel", inst("chain2_worked.json"))
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "peel", inst("v_chain2.json"))
    assert code == 1 and json.loads(out)["stage"] == "NotAChain"


def test_bord_eval(capsys):
    code, out, _ = run(capsys, "bord", "eval", inst("z2.json"), "--datum", "x=1", "--bordism", "src=;tgt=;circles=1")
    doc = json.loads(out)
    assert code == 0 and doc["morphism"] == "(0, 0)"
    code, out, _ = run(capsys, "bord", "eval", inst("super_lines.json"), "--datum", "x=1", "--bordism", "src=;tgt=;circles=1")
    assert json.loads(out)["morphism"] == "(0, 1)"
    code, out, _ = run(capsys, "bord", "eval", inst("z2.json"), "--datum", "x=1", "--bordism", "src=+;tgt=+;arcs=(s1:t1)")
    assert code == 0 and json.loads(out)["source"] == json.loads(out)["target"]
    code, out, _ = run(capsys, "bord", "eval", inst("z2.json"), "--datum", "x=1", "--bordism", "random", "--seed", "7")
    assert code == 0 and json.loads(out)["factorizations_agree"]
    code, _, _ = run(capsys, "bord", "eval", inst("z2.json"), "--datum", "x=1", "--bordism", "src=+;tgt=-")
    assert code == 2
    code, _, _ = run(capsys, "bord", "eval", inst("z2.json"), "--datum", "x=nowhere", "--bordism", "src=;tgt=")
    assert code == 2


def test_roundtrip(capsys):
    code, out, _ = run(capsys, "roundtrip", inst("z2_to_chain.json"))
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "roundtrip", inst("z2_to_chain.json"), "--object", "#0")
    doc = json.loads(out)
    assert code == 1 and doc["objects"][0]["stage"] == "NotDualizable"
