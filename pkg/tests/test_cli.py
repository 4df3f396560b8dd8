import json
import subprocess
import sys
from pathlib import Path

import pytest

from gsegal.cli import EXIT_FAIL, EXIT_INVALID, EXIT_OK, EXIT_PARSE, main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main(["check", *args, "--report", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_walking_iso_passes(tmp_path):
    code, rep = run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--max-level", "4",
                    "--checks", "segal,complete,ho")
    assert code == EXIT_OK and rep["verdict"] == "pass"
    assert rep["subgroups"] == [["e"], ["e", "r1"]]
    for H in (["e"], ["e", "r1"]):
        assert [e["verdict"] for e in rep["checks"]["segal"]["entries"] if e["subgroup"] == H] == [True] * 3
        assert [e["verdict"] for e in rep["checks"]["complete"]["entries"] if e["subgroup"] == H] == [True]
    assert rep["max_level"] == 4 and rep["input_digest"].startswith("sha256:")


def test_discrete_nerve_is_incomplete(tmp_path):
    code, rep = run(tmp_path, "--input", str(SAMPLES / "bz2_discrete.json"))
    assert code == EXIT_FAIL
    assert rep["checks"]["segal"]["passed"]
    entry = rep["checks"]["complete"]["entries"][0]
    assert entry["subgroup"] == ["e"] and not entry["verdict"] and entry["ess_surj_witness"] is not None


def test_refused_classification(tmp_path):
    code, rep = run(tmp_path, "--input", str(SAMPLES / "arrow_weq.json"))
    assert code == EXIT_FAIL
    assert all("refused" in rep["checks"][k] for k in ("segal", "complete", "ho"))


def test_error_exit_codes(tmp_path, capsys):
    assert run(tmp_path, "--input", str(SAMPLES / "malformed.json"))[0] == EXIT_PARSE
    assert run(tmp_path, "--input", str(SAMPLES / "bad_group.json"))[0] == EXIT_INVALID
    assert run(tmp_path, "--input", str(tmp_path / "missing.json"))[0] == EXIT_PARSE
    assert run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--checks", "segal,bogus")[0] == EXIT_PARSE
    assert run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--subgroups", "e,zz")[0] == EXIT_PARSE
    assert run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--subgroups", "r1")[0] == EXIT_INVALID
    assert main(["check"]) == EXIT_PARSE
    with pytest.raises(SystemExit) as info:
        main(["check", "--input", str(SAMPLES / "walking_iso_z2.json"), "--max-level", "5"])
    assert info.value.code == 2
    assert "invalid input" in capsys.readouterr().err


def test_subgroup_and_check_flags(tmp_path):
    code, rep = run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--subgroups", "e,r1",
                    "--checks", "segal", "--max-level", "2")
    assert code == EXIT_OK
    assert list(rep["checks"]) == ["segal"] and rep["subgroups"] == [["e", "r1"]]
    assert len(rep["checks"]["segal"]["entries"]) == 1


def test_adjunction_and_cellularity_sections(tmp_path):
    code, rep = run(tmp_path, "--input", str(SAMPLES / "walking_iso_z2.json"), "--checks", "adjunction,cellularity")
    assert code == EXIT_OK
    assert rep["checks"]["adjunction"]["instances"] > 0
    cell = rep["checks"]["cellularity"]
    assert cell["passed"] and all(cell[k]["instances"] > 0 for k in ("filtered_colimit", "pushout", "fixed_tensor"))


def test_report_deterministic(tmp_path):
    args = ["--input", str(SAMPLES / "walking_iso_z2.json"), "--checks", "segal,complete,ho"]
    _, first = run(tmp_path, *args)
    _, second = run(tmp_path, *args)
    first.pop("generated_at")
    second.pop("generated_at")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_corpus_command(tmp_path, capsys):
    assert main(["corpus", "--out", str(tmp_path / "c"), "--max-group-order", "2", "--max-objects", "2",
                 "--max-morphisms", "4"]) == EXIT_OK
    listed = capsys.readouterr().out.split()
    files = sorted((tmp_path / "c").iterdir())
    assert len(files) == len(listed) == 17
    code, rep = run(tmp_path, "--input", str(files[5]), "--checks", "segal,complete")
    assert code == EXIT_OK and rep["input"]["name"] == listed[5]
    assert main(["corpus", "--max-group-order", "7"]) == EXIT_PARSE


def test_schema_command(capsys):
    assert main(["schema"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["title"] == "gsegal input document"


def test_batch_mode(tmp_path):
    code, rep = run(tmp_path, "--corpus", "--checks", "segal", "--max-level", "2")
    assert code == EXIT_OK and rep["instances"] == 120 and rep["verdict"] == "pass"


def test_console_script_exit_code():
    proc = subprocess.run([sys.executable, "-m", "gsegal.cli", "check", "--input", str(SAMPLES / "bz2_discrete.json")],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_FAIL
    assert json.loads(proc.stdout)["verdict"] == "fail"
