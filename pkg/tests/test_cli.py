import json

from meansense import Schedule, Word
from meansense.cli import main


def run(*argv):
    return main(list(argv))


def test_build_emits_schedule_and_words(tmp_path):
    out = tmp_path / "s3"
    assert run("build", "--construction", "S3", "--depth", "2",
               "--out", str(out)) == 0
    sched = Schedule.from_json(json.loads((out / "schedule.json").read_text()))
    assert sched.level(1).k == 9
    assert sched.level(2).k == 1788
    a2 = Word.from_text((out / "A_2.rle").read_text())
    assert a2.runs == ((1, 3), (0, 21), (1, 3))
    for name in ("A_1", "B_1", "A_2", "B_2"):
        assert (out / f"{name}.rle").exists()


def test_build_s4_depth2_values(tmp_path):
    out = tmp_path / "s4"
    assert run("build", "--construction", "S4", "--depth", "2",
               "--out", str(out)) == 0
    sched = Schedule.from_json(json.loads((out / "schedule.json").read_text()))
    assert sched.level(1).k == 7
    assert sched.level(2).k == 469


def test_build_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("build", "--construction", "S3", "--depth", "3",
                   "--out", str(out)) == 0
    for path in sorted(a.iterdir()):
        assert path.read_bytes() == (b / path.name).read_bytes()


def test_usage_errors_exit_2(tmp_path):
    assert run("build", "--construction", "S3", "--depth", "0",
               "--out", str(tmp_path)) == 2
    assert run("check", "nope", "--out", str(tmp_path)) == 2


def test_check_requires_build_artifacts(tmp_path):
    assert run("check", "lemma-3.1", "--out", str(tmp_path / "missing")) == 2


def test_check_writes_report_with_hashes(tmp_path):
    out = tmp_path / "run"
    assert run("build", "--construction", "S3", "--depth", "3",
               "--out", str(out)) == 0
    assert run("check", "lemma-3.1", "--construction", "S3", "--depth", "3",
               "--out", str(out)) == 0
    rep = json.loads((out / "report-lemma-3.1.json").read_text())
    assert rep["verdict"] == "PASS"
    assert set(rep) == {"check", "params", "verdict", "witnesses", "caveats"}
    assert rep["params"]["config_hash"]
    assert rep["params"]["schedule_hash"]


def test_check_emits_csv_series(tmp_path):
    out = tmp_path / "run"
    run("build", "--construction", "S3", "--depth", "3", "--out", str(out))
    assert run("check", "lemma-3.2-density", "--construction", "S3",
               "--depth", "3", "--out", str(out)) == 0
    csvs = list(out.glob("series-*.csv"))
    assert csvs
    head = csvs[0].read_text().splitlines()
    assert head[0] == "step,value"


def test_report_aggregates_and_exit_codes(tmp_path):
    out = tmp_path / "run"
    run("build", "--construction", "S3", "--depth", "3", "--out", str(out))
    run("check", "lemma-3.1", "thm-unpos", "--construction", "S3",
        "--depth", "3", "--out", str(out))
    assert run("report", "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["all_pass"]
    assert run("report", "--out", str(tmp_path / "void")) == 2


def test_config_file_drives_build_and_check(tmp_path):
    out = tmp_path / "cfgrun"
    cfg = {"construction": "S4", "depth": 3,
           "base": {"kind": "thue-morse"}, "seed": 3,
           "output_dir": str(out)}
    cfg_path = tmp_path / "run.json"
    cfg_path.write_text(json.dumps(cfg))
    assert run("build", "--config", str(cfg_path)) == 0
    sched = Schedule.from_json(json.loads((out / "schedule.json").read_text()))
    assert sched.base.kind == "thue-morse"
    assert run("check", "prop-devaney", "--config", str(cfg_path)) == 0


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text(json.dumps({"construktion": "S3"}))
    assert run("build", "--config", str(cfg_path)) == 2


def test_check_reports_are_deterministic(tmp_path):
    out = tmp_path / "run"
    run("build", "--construction", "S3", "--depth", "3", "--out", str(out))
    run("check", "remark-2.1.3", "--construction", "S3", "--depth", "3",
        "--seed", "5", "--out", str(out))
    first = (out / "report-remark-2.1.3.json").read_bytes()
    run("check", "remark-2.1.3", "--construction", "S3", "--depth", "3",
        "--seed", "5", "--out", str(out))
    assert (out / "report-remark-2.1.3.json").read_bytes() == first


def test_report_flags_failures(tmp_path):
    out = tmp_path / "run"
    out.mkdir()
    bad = {"check": "synthetic", "params": {}, "verdict": "FAIL",
           "witnesses": [], "caveats": []}
    (out / "report-synthetic.json").write_text(json.dumps(bad))
    assert run("report", "--out", str(out)) == 1
