import json

import pytest

from linetile.cli import main
from linetile.engine.certificate import from_json, verify_certificate
from linetile.formulas import REFERENCE_TABLE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_triangular(capsys):
    code, out, _ = run(capsys, "verify", "--family", "triangular", "--t", "4", "--channels", "homology,engine,formula")
    rep = json.loads(out)
    assert code == 0 and rep["agree"]
    assert rep["channels"]["engine"]["value"] == "5*S^1"
    assert set(rep["verdicts"]) == {"homology~engine", "homology~formula", "engine~formula"}


def test_verify_pentagonal(capsys):
    code, out, _ = run(capsys, "verify", "--family", "pentagonal", "--t", "3", "--channels", "homology,engine,formula")
    rep = json.loads(out)
    assert code == 0 and rep["agree"]
    assert rep["channels"]["formula"]["value"] == "4*S^3"


def test_reduce_extended_with_certificate(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "reduce", "--family", "extended", "--s", "4,6", "--emit-cert", str(path))
    payload = json.loads(out)
    assert code == 0 and payload["verified"]
    assert verify_certificate(from_json(path.read_text()))


def test_gen_homology_round_trip(capsys, tmp_path):
    specs = [
        ["--family", "triangular", "--t", "5"],
        ["--family", "pentagonal_pendant", "--t", "2"],
        ["--family", "extended", "--s", "4,5", "--k", "1", "--l", "2"],
        ["--family", "cycle", "--n", "7"],
    ]
    for spec in specs:
        f = tmp_path / "g.json"
        assert run(capsys, "gen", *spec, "--out", str(f))[0] == 0
        _, a, _ = run(capsys, "homology", "--graph", str(f))
        _, b, _ = run(capsys, "homology", *spec)
        assert a == b


def test_graph_from_stdin(capsys, monkeypatch):
    import io

    _, text, _ = run(capsys, "gen", "--family", "cycle", "--n", "6")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(capsys, "reduce", "--graph", "-")
    assert code == 0 and json.loads(out)["text"] == "2*S^1"


def test_predict_range(capsys):
    code, out, _ = run(capsys, "predict", "--family", "triangular", "--t-range", "2:13")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 12
    assert rows[-1]["prediction"]["spheres"] == {"4": 64, "5": 1}


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert {r["t"]: {int(k): v for k, v in r["spheres"].items()} for r in rows} == REFERENCE_TABLE
    code, out, _ = run(capsys, "table", "--format", "text", "--t-max", "8")
    assert code == 0 and "8*S^2 v S^3" in out


def test_table_flags_reference_mismatch(capsys, monkeypatch):
    monkeypatch.setitem(REFERENCE_TABLE, 7, {2: 11})
    code, out, _ = run(capsys, "table")
    assert code == 1
    assert json.loads(out.splitlines()[5])["status"] == "reference-mismatch"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["homology", "--family", "triangular"], 2),
        (["reduce", "--family", "extended", "--s", "4,x"], 2),
        (["reduce", "--family", "triangular", "--t", "9", "--budget", "2"], 3),
        (["reduce", "--family", "cycle", "--n", "7", "--strategy", "scripted_triangle"], 3),
        (["predict", "--family", "triangular"], 2),
        (["verify", "--family", "cycle", "--n", "5", "--channels", "homology,formula"], 2),
        (["verify", "--family", "cycle", "--n", "5", "--channels", "bogus"], 2),
        (["table", "--t-max", "1"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    if argv[0] == "verify" and "formula" in argv[-1]:
        # the report itself records the unavailable channel
        assert json.loads(out)["channels"]["formula"]["status"] == "unavailable"
    else:
        assert set(json.loads(err)) == {"error", "message"}


def test_corrupted_graph_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"vertices":["a"],"edges":[{"id":"x","u":"a","v":"a"}]}')
    code, _, err = run(capsys, "homology", "--graph", str(f))
    assert code == 2 and json.loads(err)["error"]
    f.write_text("not json")
    code, _, err = run(capsys, "reduce", "--graph", str(f))
    assert code == 2 and json.loads(err)["error"]


def test_verify_range_text(capsys):
    code, out, _ = run(capsys, "verify", "--family", "triangular", "--t-range", "1:6", "--format", "text")
    assert code == 0
    assert out.count("AGREE") == 6
