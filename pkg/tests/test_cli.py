import json

import pytest

from dequiv.cli import run
from dequiv.posets import diamond, poset_from_covers


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.json"
    path.write_text(json.dumps(diamond().to_json()))
    return str(path)


def test_verify_xp_pass_exit_code(capsys):
    assert run(["verify", "xp", "--weights", "2,2,2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "pass"
    assert set(out["equal_fields"]) == {"simples", "det_cartan", "coxeter", "snf_antisym"}


def test_verify_t2_and_remark(capsys):
    assert run(["verify", "t2", "--weights", "2,3"]) == 0
    assert run(["verify", "remark", "--family", "3", "--p2", "2", "--p3", "2"]) == 0


def test_hh_both_agrees(diamond_file, capsys):
    assert run(["hh", "--poset", diamond_file, "--method", "both",
                "--max-degree", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["nerve"] == [1, 0, 0] and out["bar"] == [1, 0, 0] and out["agree"]


def test_hh_bar_on_weights(capsys):
    assert run(["hh", "--weights", "2,2,2,2", "--lambdas", "1,2",
                "--method", "bar", "--max-degree", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bar"] == [1, 0, 1]


def test_invariants_sources_and_field(diamond_file, capsys):
    assert run(["invariants", "--poset", diamond_file]) == 0
    cert_q = json.loads(capsys.readouterr().out)
    assert run(["--field", "fp:101", "invariants", "--poset", diamond_file]) == 0
    cert_p = json.loads(capsys.readouterr().out)
    assert cert_q["coxeter"] == cert_p["coxeter"]


def test_determinism(capsys):
    run(["posets", "enumerate", "--n", "4"])
    first = capsys.readouterr().out
    run(["posets", "enumerate", "--n", "4"])
    assert capsys.readouterr().out == first


def test_search_no_poset(capsys):
    assert run(["search", "no-poset", "--p", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matches"] == []


def test_bgp_round_trip(tmp_path, capsys):
    chain_q = {"vertices": ["a", "b"], "arrows": [{"id": "f", "from": "a", "to": "b"}]}
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(chain_q))
    assert run(["bgp", "--quiver", str(path), "--vertex", "b"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["arrows"][0]["from"] == "b" and out["arrows"][0]["to"] == "a"


def test_invalid_inputs_exit_2(diamond_file, capsys):
    assert run(["canonical", "--weights", "bogus"]) == 2
    assert run(["invariants"]) == 2
    assert run(["invariants", "--poset", diamond_file, "--weights", "2,2,2"]) == 2
    assert run(["--field", "fp:8", "canonical", "--weights", "2,2"]) == 2
    assert run(["posets", "enumerate", "--n", "99"]) == 2
    capsys.readouterr()


def test_text_format(diamond_file, capsys):
    assert run(["--format", "text", "invariants", "--poset", diamond_file]) == 0
    out = capsys.readouterr().out
    assert "coxeter:" in out and not out.lstrip().startswith("{")
