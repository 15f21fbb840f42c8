import csv
import json

import numpy as np
import pytest

from neofuzzy.cascade import CascadeModel
from neofuzzy.cli import main
from neofuzzy.errors import InvalidArgument
from neofuzzy.metrics import rmse
from neofuzzy.pipeline import RunConfig, evaluate, parameter_count, train


@pytest.fixture(scope="module")
def run(tmp_path_factory):
    d = tmp_path_factory.mktemp("run")
    assert main(["generate", "--length", "2500", "--out", str(d / "s.csv")]) == 0
    assert main(["train", "--out-model", str(d / "m.json"), "--out-report", str(d / "r.json")]) == 0
    return d


def test_generate_rows_and_determinism(run, tmp_path):
    rows = (run / "s.csv").read_text().splitlines()
    assert len(rows) == 2500
    main(["generate", "--length", "2500", "--out", str(tmp_path / "again.csv")])
    assert (tmp_path / "again.csv").read_bytes() == (run / "s.csv").read_bytes()


def test_generate_unwritable(tmp_path):
    assert main(["generate", "--length", "10", "--out", str(tmp_path / "no" / "x.csv")]) == 4


def test_train_report(run):
    report = json.loads((run / "r.json").read_text())
    assert report["n_train"] == 1997 and report["n_test"] == 500
    assert report["rmse_test"] <= 0.10
    assert report["parameter_count"] == parameter_count(3, 4, report["depth"])


def test_train_is_reproducible(run, tmp_path):
    main(["train", "--out-model", str(tmp_path / "m.json"), "--out-report", str(tmp_path / "r.json")])
    assert (tmp_path / "m.json").read_bytes() == (run / "m.json").read_bytes()
    a = json.loads((tmp_path / "r.json").read_text())
    b = json.loads((run / "r.json").read_text())
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_eval_mirrors_train(run, capsys):
    capsys.readouterr()
    code = main(["eval", "--model", str(run / "m.json"), "--data", str(run / "s.csv"),
                 "--train-count", "2000", "--json"])
    assert code == 0
    got = json.loads(capsys.readouterr().out)
    want = json.loads((run / "r.json").read_text())
    for key in ("rmse_train", "rmse_test", "n_train", "n_test", "parameter_count",
                "growth_log", "rmse_test_raw"):
        assert got[key] == want[key]


def test_predict_reproduces_train_rmse(run):
    out = run / "p.csv"
    assert main(["predict", "--model", str(run / "m.json"), "--data", str(run / "s.csv"),
                 "--out", str(out)]) == 0
    with open(out) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 2497
    resid = np.array([float(r["residual"]) for r in rows if int(r["index"]) < 2000])
    report = json.loads((run / "r.json").read_text())
    assert rmse(resid) == report["rmse_train"]
    test_resid = [float(r["residual"]) for r in rows if int(r["index"]) >= 2000]
    assert rmse(test_resid) == report["rmse_test"]


def test_predict_empty_input(run, tmp_path):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    out = tmp_path / "p.csv"
    assert main(["predict", "--model", str(run / "m.json"), "--data", str(empty),
                 "--out", str(out)]) == 0
    assert out.read_text() == "index,actual,predicted,residual,predicted_raw\n"


def test_predict_corrupted_snapshot(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text((run / "m.json").read_text()[:200])
    assert main(["predict", "--model", str(bad), "--data", str(run / "s.csv"),
                 "--out", str(tmp_path / "p.csv")]) == 3
    snap = json.loads((run / "m.json").read_text())
    snap["version"] = 2
    bad.write_text(json.dumps(snap))
    assert main(["eval", "--model", str(bad), "--data", str(run / "s.csv"),
                 "--train-count", "2000"]) == 3


def test_config_errors_create_no_files(tmp_path):
    model, report = tmp_path / "m.json", tmp_path / "r.json"
    for override in ("n=1", "alpha=1.5", "train_count=2500", "bogus=1", "h=1", "max_layers=7"):
        code = main(["train", "--override", override, "--out-model", str(model),
                     "--out-report", str(report)])
        assert code == 2, override
        assert not model.exists() and not report.exists()


def test_config_file_and_csv_source(tmp_path):
    data = tmp_path / "d.csv"
    rng = np.random.default_rng(0)
    values = np.sin(np.arange(400) / 5) + 0.1 * rng.normal(size=400)
    data.write_text("t,value\n" + "".join(f"{i},{float(v)!r}\n" for i, v in enumerate(values)))
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 4, "csv_path": "d.csv", "csv_column": "value",
                               "train_count": 320, "alpha": 0.9}))
    model, report = tmp_path / "m.json", tmp_path / "r.json"
    assert main(["train", "--config", str(cfg), "--override", "warmup=50",
                 "--out-model", str(model), "--out-report", str(report)]) == 0
    r = json.loads(report.read_text())
    assert r["n_train"] == 316 and r["n_test"] == 80
    assert CascadeModel.load(model).input_dim == 4


def test_data_error_exit_code(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("1.0\nabc\n")
    assert main(["train", "--override", f"csv_path=\"{data}\"", "--override", "train_count=5",
                 "--out-model", str(tmp_path / "m"), "--out-report", str(tmp_path / "r")]) == 3
    assert main(["train", "--override", f"csv_path=\"{tmp_path / 'missing.csv'}\"",
                 "--out-model", str(tmp_path / "m"), "--out-report", str(tmp_path / "r")]) == 4


def test_growth_log_empty_when_never_grown(tmp_path):
    config = RunConfig(synthetic_length=600, train_count=500, target_mse=1.0)
    model, report = train(config)
    assert report.growth_log == [] and report.depth == 0
    assert report.parameter_count == 24


def test_run_config_validation():
    with pytest.raises(InvalidArgument):
        RunConfig(n="3").validate()
    with pytest.raises(InvalidArgument):
        RunConfig.from_dict({"lags": 3})
