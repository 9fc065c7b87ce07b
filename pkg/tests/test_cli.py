import json

import pytest

from dpdistinct import cli

TSV = b"1\ta\n1\tb\n2\ta\n3\tc\n3\td\n3\te\n"


@pytest.fixture
def data(tmp_path):
    p = tmp_path / "d.tsv"
    p.write_bytes(TSV)
    return str(p)


def call(capsys, *argv):
    code = cli.run(list(argv))
    return code, capsys.readouterr()


def test_stats(capsys, data):
    code, out = call(capsys, "stats", data)
    obj = json.loads(out.out)
    assert code == 0
    assert (obj["people"], obj["records"], obj["max_per_person"], obj["vocabulary"]) == (3, 6, 3, 5)
    assert obj["config"]["command"] == "stats" and obj["config"]["format"] == "tsv"


def test_count_exact(capsys, data):
    code, out = call(capsys, "count-exact", data)
    assert code == 0 and json.loads(out.out)["distinct"] == 5


def test_curve_csv(capsys, data):
    code, out = call(capsys, "curve", data, "--ell-max", "3")
    assert code == 0
    assert out.out.splitlines() == ["ell,count", "1,3", "2,4", "3,5"]
    code, out = call(capsys, "curve", data, "--ell-max", "2", "--algo", "greedy")
    assert out.out.splitlines()[0] == "ell,count"


def test_curve_sampling_trials(capsys, data):
    code, out = call(capsys, "curve", data, "--ell-max", "2", "--algo", "sampling", "--trials", "4")
    assert code == 0 and len(out.out.splitlines()) == 3


def test_select_bound(capsys, data):
    code, out = call(capsys, "select-bound", data, "--method", "max")
    assert json.loads(out.out)["ell"] == 3
    code, out = call(capsys, "select-bound", data, "--method", "utility", "--ell-max", "5")
    obj = json.loads(out.out)
    assert not obj["private"] and 1 <= obj["ell"] <= 5
    code, out = call(capsys, "select-bound", data, "--method", "gem", "--ell-max", "5", "--seed", "3")
    assert json.loads(out.out)["private"]


def test_dp_count_trials(capsys, data):
    code, out = call(capsys, "dp-count", data, "--ell-max", "4", "--trials", "3", "--seed", "5")
    rows = [json.loads(x) for x in out.out.splitlines()]
    assert code == 0 and [r["trial"] for r in rows] == [0, 1, 2]
    assert {"method", "epsilon", "beta", "ell_max", "seed", "ell_hat", "nu_hat", "config"} <= set(rows[0])
    assert len({r["seed"] for r in rows}) == 3


def test_dp_count_fixed(capsys, data):
    code, out = call(capsys, "dp-count-fixed", data, "--ell", "2", "--epsilon", "1e9")
    obj = json.loads(out.out)
    assert code == 0 and abs(obj["nu_hat"] - 4) < 1e-6
    code, _ = call(capsys, "dp-count-fixed", data, "--ell", "2", "--epsilon", "0")
    assert code == 2


def test_jsonl_and_output_file(capsys, tmp_path):
    src = tmp_path / "d.jsonl"
    src.write_text('{"person": "p", "items": ["x", "y"]}\n')
    dst = tmp_path / "out.json"
    code, out = call(capsys, "count-exact", str(src), "-o", str(dst))
    assert code == 0 and out.out == ""
    obj = json.loads(dst.read_text())
    assert obj["distinct"] == 2 and obj["config"]["format"] == "jsonl"


def test_exit_codes(capsys, tmp_path, data, monkeypatch):
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "curve", data, "--ell-max", "0")[0] == 2
    assert call(capsys, "dp-count", data, "--beta", "0.9")[0] == 2
    assert call(capsys, "stats", str(tmp_path / "missing.tsv"))[0] == 1
    bad = tmp_path / "bad.tsv"
    bad.write_bytes(b"no tab here\n")
    code, out = call(capsys, "stats", str(bad))
    assert code == 1 and "line 1" in out.err
    bad.write_bytes(b"1\t\xff\n")
    assert call(capsys, "stats", str(bad))[0] == 1
    monkeypatch.setattr(cli, "run_selftest", lambda cases, seed: {"bounded_count": 1})
    assert call(capsys, "selftest")[0] == 3


def test_selftest_ok(capsys):
    code, out = call(capsys, "selftest", "--cases", "50")
    assert code == 0 and json.loads(out.out)["ok"]


def test_stdin(capsys, monkeypatch):
    import io
    import sys
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(TSV)))
    code, out = call(capsys, "count-exact", "-")
    assert code == 0 and json.loads(out.out)["distinct"] == 5
