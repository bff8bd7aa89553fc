import csv
import json
import math

import numpy as np
import pytest

from eigenent.cli import main
from eigenent.experiments import (ConfigError, ExperimentConfig, ResultTable,
                                  SCHEMA_COLUMNS, run_bounds, run_figure1,
                                  run_modelm, run_page, run_quadcheck,
                                  theory_correction, write_table)

LN2 = math.log(2.0)


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def strip_timestamp(path):
    rows = read_rows(path)
    for r in rows:
        r.pop("timestamp")
    return rows


def test_config_roundtrip_identity():
    cfg = ExperimentConfig(experiment="bounds", n_list=(6, 8), m_list=(2, 4),
                           disorder_w=0.2, disorder_seeds=(1, 2, 3), seed=99,
                           f_list=None, threads=2)
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again == cfg


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown"):
        ExperimentConfig.from_dict({"experiment": "page", "wat": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json('{"trials": 100}')
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json('[1,2]')
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json('not json')


def test_result_table_rejects_nonfinite(tmp_path):
    table = ResultTable(experiment="page", seed=0)
    table.add("bad", float("nan"))
    with pytest.raises(ValueError, match="non-finite"):
        table.write_csv(tmp_path / "x.csv")


def test_page_run_rows():
    cfg = ExperimentConfig(experiment="page", trials=400, seed=5,
                           page_dims=((2, 2), (4, 32)))
    table = run_page(cfg)
    exact = table.values("exact_mean", n=2, m=2)[0]
    assert exact.value == pytest.approx(1.0 / 3.0, abs=1e-15)
    mc = table.values("mc_mean", n=4, m=32)[0]
    assert mc.uncertainty is not None and mc.uncertainty > 0.0
    assert abs(mc.value - table.values("exact_mean", n=4, m=32)[0].value) <= 5 * mc.uncertainty + 5e-3


def test_page_requires_enough_trials():
    with pytest.raises(ConfigError):
        run_page(ExperimentConfig(experiment="page", trials=10))


def test_figure1_small_run():
    cfg = ExperimentConfig(experiment="figure1", n_list=(4, 6), seed=1)
    table = run_figure1(cfg)
    # mirrored corrections are exactly equal
    for n, m in ((4, 1), (6, 1), (6, 2)):
        at_f = table.values("correction", n=n, m=m)[0]
        mirrored = table.values("correction", n=n, m=n - m)[0]
        assert at_f.value == mirrored.value
        assert at_f.f == pytest.approx(m / n)
        assert mirrored.f == pytest.approx(1.0 - m / n)
    # one theory row per f value present
    fs = {r.f for r in table.rows if r.quantity == "correction"}
    theory_rows = table.values("theory_correction")
    assert {r.f for r in theory_rows} == fs
    f_half = [r for r in theory_rows if r.f == 0.5][0]
    assert f_half.value == pytest.approx(LN2 / 2.0 + 2.0 / math.pi, abs=1e-12)


def test_figure1_rejects_odd_n_and_missing_half():
    with pytest.raises(ConfigError, match="even"):
        run_figure1(ExperimentConfig(experiment="figure1", n_list=(5,)))
    with pytest.raises(ConfigError, match="1/2"):
        run_figure1(ExperimentConfig(experiment="figure1", n_list=(6,), m_list=(1,)))


def test_figure1_cap_skip_row():
    cfg = ExperimentConfig(experiment="figure1", n_list=(4, 16), sector_cap=6)
    table = run_figure1(cfg)
    assert table.values("skipped_over_cap", n=16)
    assert not table.values("sbar", n=16)


def test_bounds_small_run():
    cfg = ExperimentConfig(experiment="bounds", n_list=(6, 8), m_list=(2, 3, 4),
                           disorder_w=0.2, disorder_seeds=(1, 2), seed=0,
                           dense_cap=12)
    table, violations = run_bounds(cfg)
    assert violations == []
    slacks = table.values("eigenstate_bound_slack", n=8, m=2)
    assert len(slacks) == 256
    assert min(r.value for r in slacks) >= -1e-9
    assert all(r.energy is not None and r.j is not None for r in slacks)
    # odd m contributes no per-eigenstate rows (bound needs even m)
    assert not table.values("eigenstate_bound_slack", n=8, m=3)
    assert table.values("average_bound_slack", n=8, m=3)
    tight = table.values("tightness_m2")
    assert {r.n for r in tight} == {6, 8}
    deficits = table.values("cut_averaged_deficit")
    assert {r.seed for r in deficits} == {1, 2}
    assert all(r.value > 0.01 for r in deficits)


def test_modelm_small_run():
    cfg = ExperimentConfig(experiment="modelm", n_list=(6,), seed=4,
                           samples_per_sector=60)
    table = run_modelm(cfg)
    for j in (0, 6):
        row = table.values("sector_mean", j=j)[0]
        assert row.value == 0.0
    agg = table.values("ensemble_mean", n=6)[0]
    assert agg.uncertainty is not None
    theory_row = table.values("ensemble_theory", n=6)[0]
    assert theory_row.value == pytest.approx(3 * LN2 + math.log(0.5) / 2 - 2 / math.pi)
    assert len(table.values("sector_theory", n=6)) == 7


def test_modelm_requires_min_samples():
    with pytest.raises(ConfigError):
        run_modelm(ExperimentConfig(experiment="modelm", samples_per_sector=10))


def test_modelm_stderr_scaling():
    # doubling samples shrinks the aggregate standard error by ~1/sqrt(2)
    base = run_modelm(ExperimentConfig(experiment="modelm", n_list=(8,),
                                       samples_per_sector=120, seed=11))
    more = run_modelm(ExperimentConfig(experiment="modelm", n_list=(8,),
                                       samples_per_sector=240, seed=11))
    se1 = base.values("ensemble_mean", n=8)[0].uncertainty
    se2 = more.values("ensemble_mean", n=8)[0].uncertainty
    assert 0.6 <= se2 / se1 <= 0.85


def test_quadcheck_run():
    table, failures = run_quadcheck(ExperimentConfig(experiment="quadcheck"))
    assert failures == []
    zero = table.values("gauss_zero_integral")[0]
    assert abs(zero.value) <= 1e-9


def test_csv_determinism(tmp_path):
    cfg = ExperimentConfig(experiment="figure1", n_list=(4,), seed=7)
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    run_figure1(cfg).write_csv(p1)
    run_figure1(cfg).write_csv(p2)
    assert strip_timestamp(p1) == strip_timestamp(p2)


def test_csv_schema_and_provenance(tmp_path):
    cfg = ExperimentConfig(experiment="page", trials=150, seed=3,
                           page_dims=((2, 4),))
    path = write_table(run_page(cfg), tmp_path)
    assert path.name == "page.csv"
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    assert header == SCHEMA_COLUMNS
    rows = read_rows(path)
    assert all(r["seed"] == "3" and r["experiment"] == "page" for r in rows)
    assert all(r["schema_version"] == "1" for r in rows)
    assert all(r["timestamp"] for r in rows)
    for r in rows:
        assert np.isfinite(float(r["value"]))


def test_threads_do_not_change_output(tmp_path):
    base = ExperimentConfig(experiment="figure1", n_list=(6,), seed=2, threads=1)
    wide = ExperimentConfig(experiment="figure1", n_list=(6,), seed=2, threads=4)
    p1, p2 = tmp_path / "t1.csv", tmp_path / "t2.csv"
    run_figure1(base).write_csv(p1)
    run_figure1(wide).write_csv(p2)
    assert strip_timestamp(p1) == strip_timestamp(p2)


def test_theory_correction_shape():
    assert theory_correction(0.25) == pytest.approx(-math.log(0.75) / 2.0)
    assert theory_correction(0.75) == pytest.approx(-math.log(0.75) / 2.0)
    assert theory_correction(0.5) == pytest.approx(LN2 / 2.0 + 2.0 / math.pi)


# --- CLI surface -----------------------------------------------------------


def test_cli_page_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(["page", "--trials", "150", "--seed", "4", "--out", str(out)])
    assert code == 0
    assert (out / "page.csv").exists()


def test_cli_quadcheck(tmp_path):
    assert main(["quadcheck", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "quadcheck.csv").exists()


def test_cli_config_file_roundtrip(tmp_path):
    cfg = ExperimentConfig(experiment="figure1", n_list=(4,), seed=12)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(cfg.to_json())
    code = main(["figure1", "--config", str(cfg_path), "--out", str(tmp_path)])
    assert code == 0
    rows = read_rows(tmp_path / "figure1.csv")
    assert all(r["seed"] == "12" for r in rows if r["quantity"] == "sbar")


def test_cli_flag_overrides_config(tmp_path):
    cfg = ExperimentConfig(experiment="figure1", n_list=(4,), seed=12)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(cfg.to_json())
    code = main(["figure1", "--config", str(cfg_path), "--seed", "77",
                 "--out", str(tmp_path)])
    assert code == 0
    rows = read_rows(tmp_path / "figure1.csv")
    assert all(r["seed"] == "77" for r in rows if r["quantity"] == "sbar")


def test_cli_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"experiment": "figure1", "bogus": 1}')
    assert main(["figure1", "--config", str(bad)]) == 2
    assert "config error" in capsys.readouterr().err

    mismatched = tmp_path / "mismatch.json"
    mismatched.write_text('{"experiment": "page"}')
    assert main(["figure1", "--config", str(mismatched)]) == 2

    assert main(["figure1", "--n-list", "5", "--out", str(tmp_path)]) == 2
    assert main(["modelm", "--samples", "5", "--out", str(tmp_path)]) == 2
    assert main(["page", "--n-list", "a,b"]) == 2
    assert main(["figure1", "--config", str(tmp_path / "missing.json")]) == 2


def test_cli_violation_exit_code(tmp_path, monkeypatch):
    # force a bound violation by patching the bound evaluation
    import eigenent.experiments as exp

    def fake_bound(m, n, moment, norm):
        return -1.0

    monkeypatch.setattr(exp.theory, "average_entropy_bound", fake_bound)
    code = main(["bounds", "--n-list", "4", "--m-list", "1", "--out", str(tmp_path)])
    assert code == 1


def test_cli_backend_exit_code(tmp_path, monkeypatch):
    import eigenent.experiments as exp
    from eigenent.eigensolve import BackendError

    def boom(*a, **kw):
        raise BackendError("synthetic failure")

    monkeypatch.setattr(exp, "diagonalize_sectors", boom)
    code = main(["figure1", "--n-list", "4", "--out", str(tmp_path)])
    assert code == 3
