import json
import os
import random

import pytest

from dedekind.known import DEDEKIND, known_value
from dedekind.pipeline import (
    METHODS,
    CheckpointMismatch,
    RunManifest,
    VerificationFailure,
    bound_report,
    plus4_units,
    rank_shift,
    run,
    verify,
)
from dedekind.canon import classify_intervals
from dedekind.lattice import generate_lattice


@pytest.mark.parametrize("method", METHODS)
def test_every_method_on_base_2(method):
    rep = run(RunManifest(2, method))
    assert rep["value"] == str(DEDEKIND[2 + rank_shift(method)])
    assert {"method", "base", "value", "elapsed", "work_units", "checkpoint"} <= set(rep)


def test_plus4_sym_base_3():
    assert run(RunManifest(3, "plus4-sym"))["value"] == "2414682040998"


def test_plus4_matrix_base_3():
    assert run(RunManifest(3, "plus4-matrix"))["value"] == "2414682040998"


def test_unknown_method():
    with pytest.raises(ValueError):
        run(RunManifest(2, "plus5"))


def test_oracle_refuses_base_3():
    with pytest.raises(ValueError):
        run(RunManifest(3, "plus4-oracle"))


def test_units_are_per_interval_class():
    lat = generate_lattice(3)
    units = plus4_units(lat, classify_intervals(lat), "plus4-sym", chunk_size=8)
    assert len({u.uid for u in units}) == len(units)
    assert {u.uid.split(":")[0] for u in units} == {str(i) for i in range(18)}


def _strip(rep):
    return {k: v for k, v in rep.items() if k not in ("elapsed", "checkpoint")}


def test_resume_reproduces_single_shot(tmp_path):
    single = run(RunManifest(3, "plus4-sym", chunk_size=8))
    total_units = single["work_units"]
    rng = random.Random(7)
    for cut in sorted(rng.sample(range(1, total_units), 3)):
        ck = tmp_path / f"ck{cut}.json"
        part = run(RunManifest(3, "plus4-sym", checkpoint=str(ck), chunk_size=8, stop_after=cut))
        assert part["value"] is None and part["completed_units"] == cut
        saved = json.loads(ck.read_text())
        assert saved["base"] == 3 and saved["method"] == "plus4-sym"
        assert isinstance(saved["partial_sum"], str) and len(saved["completed"]) == cut
        done = run(RunManifest(3, "plus4-sym", checkpoint=str(ck), chunk_size=8))
        assert done["value"] == single["value"]
        assert _strip(done)["partial_sum"] == single["partial_sum"]


def test_resume_refuses_mismatched_checkpoint(tmp_path):
    ck = tmp_path / "ck.json"
    run(RunManifest(2, "plus4-sym", checkpoint=str(ck), chunk_size=2, stop_after=1))
    with pytest.raises(CheckpointMismatch):
        run(RunManifest(2, "plus4-matrix", checkpoint=str(ck), chunk_size=2))
    with pytest.raises(CheckpointMismatch):
        run(RunManifest(2, "plus4-sym", checkpoint=str(ck), chunk_size=3))


def test_jobs_do_not_change_report(tmp_path):
    a = run(RunManifest(3, "plus4-sym", jobs=1, chunk_size=16))
    b = run(RunManifest(3, "plus4-sym", jobs=2, chunk_size=16))
    assert _strip(a) == _strip(b)


def test_report_file(tmp_path):
    p = tmp_path / "r.json"
    run(RunManifest(1, "plus3", report=str(p)))
    assert json.loads(p.read_text())["value"] == str(DEDEKIND[4])


def test_lattice_file_base_mismatch(tmp_path):
    p = tmp_path / "d2.fdl"
    generate_lattice(2).save(p)
    with pytest.raises(ValueError):
        run(RunManifest(3, "plus1", lattice_path=str(p)))


@pytest.mark.parametrize("base", [0, 1, 2, 3])
def test_verify_quick(base):
    rep = verify(base)
    assert rep["ok"]
    assert all(m["value"] == str(DEDEKIND[base + rank_shift(name)])
               for name, m in rep["methods"].items())


def test_verify_rejects_large_base():
    with pytest.raises(ValueError):
        verify(5, "quick")


def test_verify_names_disagreement(monkeypatch):
    import dedekind.pipeline as pl

    broken = dict(pl.DEDEKIND)
    broken[5] += 1
    monkeypatch.setattr(pl, "DEDEKIND", broken)
    with pytest.raises(VerificationFailure, match="plus3"):
        verify(2, methods=["plus3"])


@pytest.mark.parametrize("base", range(6))
def test_bound_report(base):
    rep = bound_report(base)
    assert rep["chain_bits"] == 128 and rep["dim_below_2_13"]


def test_known_values():
    assert known_value(8) == 56130437228687557907788
    assert known_value(9) == 286386577668298411128469151667598498812366
    with pytest.raises(KeyError):
        known_value(10)


@pytest.mark.skipif(os.environ.get("DEDEKIND_LONG") != "1",
                    reason="about 15 minutes on one core; set DEDEKIND_LONG=1")
def test_plus4_matrix_base_4_long():
    assert run(RunManifest(4, "plus4-matrix"))["value"] == str(DEDEKIND[8])
