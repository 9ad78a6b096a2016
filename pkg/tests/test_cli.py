import json

from decspace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_check_poset_all(tmp_path, capsys):
    path = tmp_path / "chain3.txt"
    path.write_text("0 < 1\n1 < 2\n2 < 3\n")
    code, out = run(capsys, "check", f"poset:{path}", "all")
    assert code == 0
    assert "PASS" in out


def test_check_forests_decomposition(capsys):
    code, out = run(capsys, "check", "forests", "decomposition", "--nodes", "3")
    assert code == 0


def test_check_forests_segal_fails_with_witness(capsys):
    code, out = run(capsys, "check", "forests", "segal", "--nodes", "2", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["check"] == "segal"
    assert payload["pass"] is False
    assert any(not sq["pass"] for sq in payload["squares"])


def test_check_json_deterministic(capsys):
    code1, out1 = run(capsys, "check", "binomial", "decomposition", "--max", "3", "--format", "json")
    code2, out2 = run(capsys, "check", "binomial", "decomposition", "--max", "3", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2


def test_coproduct_binomial_table(capsys):
    code, out = run(capsys, "coproduct", "binomial", "--max", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "f,a,b,coefficient"
    assert "2,1,1,2" in lines
    assert "3,1,2,3" in lines


def test_coproduct_single_element(capsys):
    code, out = run(capsys, "coproduct", "forests", "--nodes", "2", "--element", "(())")
    assert code == 0
    rows = [l for l in out.strip().splitlines()[1:]]
    assert len(rows) == 3


def test_coproduct_unknown_key(capsys):
    code = main(["coproduct", "forests", "--nodes", "2", "--element", "zzz"])
    assert code == 2


def test_coproduct_k2(capsys):
    code, out = run(capsys, "coproduct", "graphs", "--vertices", "2", "--element", "2:01")
    assert code == 0
    body = out.strip().splitlines()[1:]
    assert len(body) == 3
    assert "2:01,1:,1:,2" in body


def test_hall_match(capsys):
    code, out = run(capsys, "hall", "--q", "2", "--n", "2", "--k", "1")
    assert code == 0
    assert "enumerated=3 gaussian=3 MATCH" in out
    code, out = run(capsys, "hall", "--q", "3", "--n", "2", "--k", "1")
    assert code == 0
    assert "enumerated=4 gaussian=4 MATCH" in out
    code, out = run(capsys, "hall", "--q", "2", "--n", "3", "--k", "0")
    assert code == 0
    assert "MATCH" in out


def test_hall_bad_field(capsys):
    code = main(["hall", "--q", "6", "--n", "2", "--k", "1"])
    assert code == 2


def test_coassoc_binomial(capsys):
    code, _ = run(capsys, "coassoc", "binomial", "--max", "3")
    assert code == 0


def test_coassoc_corrupted_fails(capsys):
    code, _ = run(capsys, "coassoc", "forests", "--nodes", "2", "--corrupt-seed", "5")
    assert code == 1


def test_invalid_space(capsys):
    code = main(["check", "nonsense", "segal"])
    assert code == 2


def test_missing_poset_file(capsys):
    code = main(["check", "poset:/nonexistent/file.txt", "all"])
    assert code == 2
