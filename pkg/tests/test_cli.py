import io
import json

import pytest

from modp_llc.cli import main
from modp_llc.inductions import element_from_json, element_to_json, iwahori_indicator


def run(argv, monkeypatch=None, stdin=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv, out)
    return code, out.getvalue()


def test_verify_ok_and_deterministic():
    code, a = run(["verify", "--p", "3", "--suite", "relations", "--trials", "1", "--seed", "7"])
    assert code == 0 and "not ok" not in a
    _, b = run(["verify", "--p", "3", "--suite", "relations", "--trials", "1", "--seed", "7"])
    assert a == b


def test_verify_all_p3():
    code, out = run(["verify", "--p", "3", "--suite", "all", "--trials", "3", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["schema"] == 1


def test_verify_default_primes_from_env(monkeypatch):
    monkeypatch.setenv("MODP_LLC_PRIMES", "2,3")
    code, out = run(["verify", "--suite", "psi", "--trials", "1", "--format", "json"])
    assert code == 0 and [r["p"] for r in json.loads(out)["reports"]] == [2, 3]
    monkeypatch.setenv("MODP_LLC_PRIMES", "2,4")
    assert run(["verify", "--suite", "psi"])[0] == 2


def test_usage_errors():
    assert run(["verify", "--p", "4"])[0] == 2
    assert run(["verify", "--p", "17"])[0] == 2
    assert run(["verify", "--p", "3", "--trials", "0"])[0] == 2
    assert run(["llc", "--p", "3", "--r", "3"])[0] == 2
    assert run(["nonsense"])[0] == 2


def test_act_generator_images(tmp_path):
    code, out = run(["act", "--p", "3", "--op", "T10"])
    assert code == 0
    x = element_from_json(json.loads(out))
    assert len(x.support) == 1
    e = next(iter(x.support))
    assert (e.origin.n, e.terminal.n) == (-1, 0)
    code, out = run(["act", "--p", "3", "--op", "T12"])
    assert len(json.loads(out)["support"]) == 3


def test_act_file_round_trip(tmp_path):
    x = iwahori_indicator(5, r=2)
    path = tmp_path / "x.json"
    path.write_text(json.dumps(element_to_json(x)))
    code, out = run(["act", "--element", str(path), "--op", "psi_r"])
    assert code == 0
    y = element_from_json(json.loads(out))
    assert element_from_json(element_to_json(y)) == y
    code, out = run(["act", "--element", str(path), "--matrix", "[[0, 1], [5, 0]]"])
    assert code == 0


def test_act_domain_and_schema_errors(tmp_path, monkeypatch):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(element_to_json(iwahori_indicator(5, r=2))))
    assert run(["act", "--element", str(path), "--op", "T10"])[0] == 2
    assert run(["act", "--element", "-"], monkeypatch, stdin="{bad")[0] == 2
    assert run(["act", "--element", "-"], monkeypatch, stdin='{"kind": "x"}')[0] == 2


def test_llc_command():
    code, out = run(["llc", "--p", "3", "--r", "0", "--lambda", "0"])
    doc = json.loads(out)
    assert code == 0 and doc["galois"]["type"] == "irreducible" and doc["galois"]["c"] == 1
    assert doc["gl2_iwahori"][0]["relations"][1] == [[0], [1], [1], [0]]
    code, out = run(["llc", "--p", "5", "--r", "1", "--lambda", "2"])
    doc = json.loads(out)
    assert [x["r"] for x in doc["gl2_spherical"]] == [1, 1]
    assert doc["gl2_spherical"][1]["lambda"] == [3] and doc["gl2_spherical"][1]["eta"]["a"] == 2
    code, out = run(["llc", "--p", "3", "--ext-degree", "2", "--r", "1", "--lambda", "1,1", "--format", "text"])
    assert code == 0 and "galois" in out


def test_tree_commands():
    code, out = run(["tree", "--p", "2", "ball", "--radius", "2"])
    assert code == 0 and out.count("xlabel") == 10
    code, out = run(["tree", "--p", "3", "neighbors", "--format", "json"])
    assert len(json.loads(out)["neighbors"]) == 4
    code, out = run(["tree", "--p", "2", "support"])
    assert out.count("color=red") == 1 and out.count("color=blue") == 2
    assert run(["tree", "--p", "3", "neighbors", "--vertex", "{oops"])[0] == 2


def test_explore_command():
    code, out = run(["explore", "--p", "5", "--r", "1", "--radius", "2"])
    assert code == 0 and json.loads(out)["image_in_kernel"]
    assert run(["explore", "--p", "5", "--r", "0"])[0] == 2
