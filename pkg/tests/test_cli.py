import json
import subprocess
import sys

import pytest

from dedekind.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_plus1(capsys):
    code, out, _ = _run(capsys, "compute", "--method", "plus1", "--base", "2")
    assert code == 0 and out.strip() == "20"


def test_compute_plus4_sym_base3(capsys):
    code, out, _ = _run(capsys, "compute", "--method", "plus4-sym", "--base", "3")
    assert code == 0 and out.strip() == "2414682040998"


def test_staged_pipeline_with_files(tmp_path, capsys):
    lat, cls, pairs = tmp_path / "d3.fdl", tmp_path / "d3.jsonl", tmp_path / "pairs"
    assert _run(capsys, "gen", "--n", "3", "--out", str(lat))[0] == 0
    assert _run(capsys, "interval-classes", "--lattice", str(lat), "--out", str(cls))[0] == 0
    assert len(cls.read_text().splitlines()) == 18
    code, out, _ = _run(capsys, "pair-classes", "--lattice", str(lat), "--classes", str(cls),
                        "--out", str(pairs))
    summary = json.loads(out)
    assert code == 0 and (summary["pairs"], summary["pair_classes"]) == (1127, 446)
    report = tmp_path / "r.json"
    code, out, _ = _run(capsys, "compute", "--method", "plus4-sym", "--base", "3",
                        "--lattice", str(lat), "--classes", str(cls), "--pairs", str(pairs),
                        "--report", str(report))
    assert code == 0 and out.strip() == "2414682040998"
    assert json.loads(report.read_text())["value"] == "2414682040998"


def test_single_interval_pair_classes(tmp_path, capsys):
    lat, cls = tmp_path / "d2.fdl", tmp_path / "d2.jsonl"
    _run(capsys, "gen", "--n", "2", "--out", str(lat))
    _run(capsys, "interval-classes", "--lattice", str(lat), "--out", str(cls))
    code, out, _ = _run(capsys, "pair-classes", "--lattice", str(lat), "--classes", str(cls),
                        "--out", str(tmp_path / "p"), "--interval", "0:15")
    assert code == 0 and json.loads(out)["pair_classes"] == 10
    code, _, err = _run(capsys, "pair-classes", "--lattice", str(lat), "--classes", str(cls),
                        "--out", str(tmp_path / "p"), "--interval", "3:15")
    assert code == 2 and "representative" in err


def test_interrupt_and_resume(tmp_path, capsys):
    ck = str(tmp_path / "ck.json")
    args = ["compute", "--method", "plus4-sym", "--base", "3", "--checkpoint", ck,
            "--chunk-size", "8"]
    code, out, _ = _run(capsys, *args, "--stop-after", "4")
    assert code == 3 and out.startswith("incomplete")
    code, out, _ = _run(capsys, *args)
    assert code == 0 and out.strip() == "2414682040998"


def test_checkpoint_mismatch_exit_code(tmp_path, capsys):
    ck = str(tmp_path / "ck.json")
    _run(capsys, "compute", "--method", "plus4-sym", "--base", "2", "--checkpoint", ck,
         "--stop-after", "1", "--chunk-size", "2")
    code, _, err = _run(capsys, "compute", "--method", "plus4-sym", "--base", "3",
                        "--checkpoint", ck, "--chunk-size", "2")
    assert code == 2 and "checkpoint" in err


def test_missing_and_corrupt_inputs(tmp_path, capsys):
    code, _, err = _run(capsys, "interval-classes", "--lattice", str(tmp_path / "none"),
                        "--out", str(tmp_path / "x"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.fdl"
    bad.write_bytes(b"nope")
    code, _, _ = _run(capsys, "compute", "--method", "plus1", "--base", "2", "--lattice", str(bad))
    assert code == 2


def test_gen_rejects_rank(tmp_path, capsys):
    code, _, err = _run(capsys, "gen", "--n", "7", "--out", str(tmp_path / "x"))
    assert code == 2


def test_verify_and_selftest(capsys):
    code, out, _ = _run(capsys, "verify", "--base", "2")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = _run(capsys, "selftest")
    assert code == 0 and out.count("PASS") == 5


def test_jobs_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("DEDEKIND_JOBS", "2")
    code, out, _ = _run(capsys, "compute", "--method", "plus4-sym", "--base", "2",
                        "--verbose-report")
    assert code == 0 and out.splitlines()[0] == "7828354"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dedekind", "compute", "--method", "plus2",
                          "--base", "1"], capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "20"


def test_unknown_method_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(["compute", "--method", "plus9", "--base", "1"])
