"""End-to-end runs of the command line through its main() entry point."""

import io
import json

import pytest

from krhom.cli import main

TREFOIL = "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\n"
HOPF_POS = "X[4,2,3,1]\nX[2,4,1,3]\n"


def write(tmp_path, text, name="d.pd"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_bracket_text(tmp_path, capsys):
    assert main(["bracket", write(tmp_path, TREFOIL)]) == 0
    assert capsys.readouterr().out.strip() == "-q^9 + q^5 + q^3 + q"


def test_bracket_tsv_and_json(tmp_path, capsys):
    path = write(tmp_path, HOPF_POS)
    assert main(["bracket", path, "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["6\t1", "4\t1", "2\t1", "0\t1"]
    assert main(["bracket", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["crossings"] == 2
    assert payload["components"] == 2
    assert payload["bracket"] == [[6, 1], [4, 1], [2, 1], [0, 1]]


def test_bracket_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("O[1]\n"))
    assert main(["bracket", "-"]) == 0
    assert capsys.readouterr().out.strip() == "q + q^-1"


def test_homology_tsv_totals(tmp_path, capsys):
    assert main(["homology", write(tmp_path, TREFOIL), "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["-3\t1", "-2\t1", "0\t2"]


def test_homology_tsv_bigraded(tmp_path, capsys):
    path = write(tmp_path, TREFOIL)
    assert main(["homology", path, "--bigraded", "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["-3\t9\t1", "-2\t5\t1", "0\t1\t1", "0\t3\t1"]


def test_homology_text_has_table(tmp_path, capsys):
    assert main(["homology", write(tmp_path, TREFOIL), "--bigraded"]) == 0
    out = capsys.readouterr().out
    assert "spec khovanov: a = 0, h = 0" in out
    assert "total dimension 4" in out


def test_homology_all_presets(tmp_path, capsys):
    path = write(tmp_path, TREFOIL)
    assert main(["homology", path, "--all", "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    by_spec = {}
    for line in lines:
        cells = line.split("\t")
        by_spec.setdefault(cells[0], []).append(cells[1:])
    assert by_spec["khovanov"] == [["-3", "1"], ["-2", "1"], ["0", "2"]]
    assert by_spec["double"] == by_spec["khovanov"]
    assert by_spec["distinct1"] == [["0", "2"]]
    assert by_spec["distinct2"] == [["0", "2"]]


def test_homology_custom_spec(tmp_path, capsys):
    path = write(tmp_path, TREFOIL)
    assert main(["homology", path, "--spec", "1,0", "--format", "tsv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["0\t2"]


def test_homology_parallel_matches_serial(tmp_path, capsys):
    path = write(tmp_path, HOPF_POS)
    assert main(["homology", path, "--bigraded", "--format", "tsv"]) == 0
    serial = capsys.readouterr().out
    assert main(["homology", path, "--bigraded", "--format", "tsv", "--jobs", "2"]) == 0
    assert capsys.readouterr().out == serial
    assert serial.splitlines() == ["-2\t4\t1", "-2\t6\t1", "0\t0\t1", "0\t2\t1"]


def test_homology_json(tmp_path, capsys):
    assert main(["homology", write(tmp_path, TREFOIL), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    (result,) = payload["results"]
    assert result["spec"] == "khovanov"
    assert result["total_dimension"] == 4
    assert result["rows"] == [[-3, 1], [-2, 1], [0, 2]]


def test_dump_complex(tmp_path, capsys):
    out = tmp_path / "cx.json"
    path = write(tmp_path, TREFOIL)
    assert main(["homology", path, "--dump-complex", str(out), "--format", "tsv"]) == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    sizes = {int(k): len(v) for k, v in data["modules"].items()}
    assert sizes == {-3: 8, -2: 12, -1: 6, 0: 4}
    assert all("label" in g and "q" in g for g in data["modules"]["0"])
    entry = data["differential"]["-3"][0]
    assert len(entry) == 3 and isinstance(entry[2], str)


def test_all_with_bigraded_rejected(tmp_path, capsys):
    path = write(tmp_path, TREFOIL)
    assert main(["homology", path, "--all", "--bigraded"]) == 2


def test_bad_inputs_exit_2(tmp_path, capsys):
    assert main(["homology", str(tmp_path / "absent.pd")]) == 2
    assert main(["homology", write(tmp_path, TREFOIL), "--spec", "bogus"]) == 2
    assert main(["bracket", write(tmp_path, "X[1,2,3]\n", "bad.pd")]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_verify_clean(capsys):
    assert main(["verify"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "PASS compose_check"
    names = [line.split()[1] for line in lines if line.startswith("PASS")]
    assert "isom4_triangle" in names
    assert "closed_web_ranks" in names
    assert "reidemeister_r3" in names
    assert "jones_skein_triples" in names
    assert lines[-1].endswith("passed, 0 failed")


def test_mf_verify_is_factorizations_only(capsys):
    assert main(["mf-verify", "--format", "tsv"]) == 0
    rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
    names = [r[0] for r in rows]
    assert names[0] == "compose_check"
    assert "induced_map_check" in names
    assert "euler_vs_bracket" not in names
    assert all(r[1] == "PASS" for r in rows)


def test_verify_filter(capsys):
    assert main(["verify", "--filter", "isom4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "PASS isom4_triangle"
    assert lines[-1] == "1 checks: 1 passed, 0 failed"
    assert main(["verify", "--filter", "no_such_check"]) == 2


def test_verify_inject_fault(capsys):
    assert main(["verify", "--inject-fault"]) == 1
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("FAIL compose_check:")
    assert sum(1 for line in lines if line.startswith("FAIL")) == 1
    assert "15 passed, 1 failed" in lines[-1]


def test_verify_parallel_and_json(capsys):
    assert main(["verify", "--jobs", "3", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["failed"] == 0
    assert payload["checks"][0]["name"] == "compose_check"
    assert all(c["ok"] for c in payload["checks"])


def test_verify_parallel_reports_fault(capsys):
    assert main(["mf-verify", "--jobs", "2", "--inject-fault"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("FAIL compose_check:")
