import json

import pytest

from brickwall.cli import main
from brickwall.reliability import ReliabilityReport


@pytest.fixture(autouse=True)
def offline(monkeypatch, tmp_path):
    monkeypatch.setenv("BRICK_OFFLINE", "1")
    monkeypatch.setenv("BRICK_OEIS_CACHE", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["count", "--width", "3", "--length", "8", "--type", "1"], "89"),
    (["count", "--width", "4", "--length", "2", "--type", "2"], "8"),
    (["count", "-w", "5", "-l", "6", "--oracle"], "94"),
])
def test_count(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_count_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["count", "--width", "1", "--length", "3", "--type", "1"])
    assert err.value.code == 2


def test_odd_width_type_note(capsys):
    _, out, err = run(capsys, "count", "-w", "3", "-l", "2", "-t", "2")
    assert out.strip() == "5" and "odd" in err


def test_paths_listing(capsys):
    code, out, _ = run(capsys, "paths", "--width", "3", "--length", "2", "--type", "1")
    assert code == 0 and out.split() == ["0:H->0", "1:H->1", "1:HU->2", "2:H->2", "2:HD->1"]
    code, out, _ = run(capsys, "paths", "--width", "2", "--length", "1", "--type", "2")
    assert out.split() == ["0:->0", "1:->1"]


def test_paths_truncation(capsys):
    code, out, err = run(capsys, "paths", "--width", "4", "--length", "20", "--type", "1", "--limit", "10")
    assert code == 1 and len(out.splitlines()) == 10 and "truncated" in err


def test_paths_guard_without_limit(capsys, monkeypatch):
    monkeypatch.setattr("brickwall.cli.DEFAULT_PATH_GUARD", 50)
    code, out, err = run(capsys, "paths", "-w", "4", "-l", "8")
    assert code == 1 and out == "" and "--limit" in err


def test_paths_json(capsys):
    _, out, _ = run(capsys, "paths", "-w", "3", "-l", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["paths"][2] == {"start_row": 1, "steps": "HU", "end_row": 2}


def test_seq_outputs(capsys):
    _, out, _ = run(capsys, "seq", "--width", "5", "--max-length", "8")
    assert out.strip() == "5,9,16,29,52,94,169,305"
    code, out, _ = run(capsys, "seq", "--width", "3", "--max-length", "6", "--check")
    assert code == 0
    _, out, _ = run(capsys, "seq", "--width", "4", "--type", "1", "--max-length", "8", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "l,count" and lines[-1] == "8,162"
    _, out, _ = run(capsys, "seq", "-w", "4", "-t", "2", "--max-length", "60", "--format", "json")
    doc = json.loads(out)
    assert doc["terms"][-1] == str(8 * 3 ** 29)
    assert json.loads(json.dumps(doc)) == doc


def test_seq_oeis_check(capsys):
    code, _, err = run(capsys, "seq", "-w", "3", "--max-length", "8", "--oeis", "--offline")
    assert code == 0 and "offset 4" in err
    code, _, err = run(capsys, "seq", "-w", "3", "--max-length", "12", "--oeis")
    assert code == 0
    code, _, err = run(capsys, "seq", "-w", "12", "--max-length", "4", "--oeis")
    assert code == 1


def test_matrix_dump(capsys):
    _, out, _ = run(capsys, "matrix", "-w", "3", "-l", "3", "-t", "1")
    assert [line.split() for line in out.strip().splitlines()] == [["1", "1", "0"], ["1", "1", "1"], ["1", "1", "1"]]
    _, out, _ = run(capsys, "matrix", "-w", "3", "--name", "ML", "--format", "json")
    assert json.loads(out)["rows"] == [["1", "0", "0"], ["0", "1", "1"], ["0", "1", "1"]]
    with pytest.raises(SystemExit):
        main(["matrix", "-w", "4", "--name", "MU"])


def test_rel_coeffs(capsys):
    code, out, _ = run(capsys, "rel", "coeffs", "--width", "3", "--length", "4", "--type", "1")
    report = ReliabilityReport.from_json(json.loads(out))
    assert code == 0 and report.P_l == 13 and report.P_l1 == -10
    assert report.to_json() == json.loads(out)


def test_rel_table(capsys):
    _, out, _ = run(capsys, "rel", "table", "--width", "2", "--length", "2", "--type", "1")
    assert out.splitlines()[0] == "N: 0,0,2,4,1"
    code, _, err = run(capsys, "rel", "table", "-w", "4", "-l", "4", "--max-states", "1000")
    assert code == 1 and "--max-states" in err


def test_rel_mc_reproducible(capsys):
    argv = ["rel", "mc", "--width", "3", "--length", "2", "--type", "1", "--p", "0.5", "--trials", "200000", "--seed", "7", "--exact"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    assert abs(doc["z"]) < 4


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max-width", "4", "--max-length", "5", "--max-relays", "12")
    assert code == 0 and out.startswith("ok")


def test_table1_default(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0 and len(out.strip().splitlines()) == 13


def test_table1_corrupted_fixture(capsys, tmp_path):
    from brickwall.sequences import table1_reference

    rows = [{"width": r.width, "kind": int(r.kind) if r.kind else None, "terms": list(r.terms), "oeis_id": r.oeis_id}
            for r in table1_reference()]
    rows[4]["terms"][5] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rows))
    code, _, err = run(capsys, "table1", "--fixture", str(path))
    assert code == 1 and "l=6" in err and "computed 116, expected 117" in err


def test_table1_check_oeis_offline(capsys):
    code, out, _ = run(capsys, "table1", "--check-oeis", "--offline")
    assert code == 0 and "offset=4" in out


def test_oeis_show_offline(capsys):
    code, out, _ = run(capsys, "oeis", "show", "A000045", "--offline")
    assert code == 0 and out.startswith("A000045 (fixture): 0,1,1,2")
    code, _, err = run(capsys, "oeis", "fetch", "A000045")
    assert code == 1 and "BRICK_OFFLINE" in err
