import csv
import json
from pathlib import Path

import pytest

from scripts.run_pipeline import main
from src.errors import SelectionError
from src.experiments.config_file import apply_overrides
from src.experiments.presets import PLANTED_ATOMS, preset
from src.pipeline import cmd_approximate, cmd_reference, cmd_sweep


def _rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def _assert_manifest_complete(out_dir):
    manifest = json.loads((out_dir / "manifest.json").read_text())
    listed = {str(p) for p in manifest["outputs"]}
    for path in listed:
        assert Path(path).exists(), path
    written = {str(p) for p in out_dir.rglob("*") if p.is_file()}
    assert written <= listed
    return manifest


@pytest.mark.parametrize("name", ["planted_rational", "planted_expsum"])
def test_approximate_recovers_planted_atoms(tmp_path, name):
    manifest = cmd_approximate(preset(name), tmp_path)
    rows = _rows(tmp_path / "params.csv")
    assert [r["i"] for r in rows] == ["1", "2", "3"]
    params = json.loads((tmp_path / "params.json").read_text())
    assert sorted(u for u, _ in params["terms"]) == pytest.approx(sorted(PLANTED_ATOMS.values()), abs=1e-8)
    assert params["residual_norm"] < 1e-8
    assert manifest.solver_summary["selected_iter"] == params["selected_iter"]
    assert manifest.error == ""


def test_approximate_writes_every_output(tmp_path):
    cmd_approximate(preset("planted_expsum"), tmp_path, snapshots=True, dump_path=tmp_path / "system.csv")
    for name in ("config.txt", "trace.csv", "trace_coefficients.csv", "params.json",
                 "params.csv", "error_curve.csv", "manifest.json", "system.csv"):
        assert (tmp_path / name).exists(), name
    assert list(_rows(tmp_path / "trace.csv")[0]) == ["iter", "residual_norm", "support_size"]
    assert list(_rows(tmp_path / "error_curve.csv")[0]) == ["x", "epsilon"]
    assert len(_rows(tmp_path / "error_curve.csv")) == 400
    manifest = _assert_manifest_complete(tmp_path)
    assert set(manifest["timing"]) >= {"grid", "design", "nnls", "select", "evaluate"}


def test_params_csv_uses_table_number_format(tmp_path):
    cmd_approximate(preset("planted_rational"), tmp_path)
    row = _rows(tmp_path / "params.csv")[0]
    mantissa, exponent = row["u"].split("e")
    assert len(mantissa.split(".")[1]) == 6
    assert exponent[0] in "+-"


def test_eval_grid_override(tmp_path):
    config = apply_overrides(preset("planted_expsum"), {"eval_n": 1000})
    cmd_approximate(config, tmp_path)
    assert len(_rows(tmp_path / "error_curve.csv")) == 1000


def test_unattained_m_fails_with_manifest(tmp_path):
    config = apply_overrides(preset("planted_rational"), {"m": 10, "max_outer": 1})
    with pytest.raises(SelectionError, match="attained support sizes"):
        cmd_approximate(config, tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert "m=10" in manifest["error"]
    assert (tmp_path / "trace.csv").exists()
    assert not (tmp_path / "params.csv").exists()


def test_cli_unattained_m_exits_nonzero(tmp_path):
    code = main(["approximate", "--preset", "planted_rational", "--m", "10", "--max-outer", "1", "--out", str(tmp_path)])
    assert code == 1


def test_cli_approximate_with_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = planted_expsum\nmax_outer = 50\n")
    out = tmp_path / "out"
    assert main(["approximate", "--config", str(cfg), "--out", str(out), "--snapshots"]) == 0
    assert (out / "trace_coefficients.csv").exists()
    assert "max_outer = 50" in (out / "config.txt").read_text()


def test_identical_runs_are_bit_identical(tmp_path):
    cmd_approximate(preset("planted_expsum"), tmp_path / "one")
    cmd_approximate(preset("planted_expsum"), tmp_path / "two")
    assert (tmp_path / "one" / "params.csv").read_bytes() == (tmp_path / "two" / "params.csv").read_bytes()


@pytest.mark.parametrize("source, first_x_below", [("table1_a50", 1.01), ("table2_a50", 1e-2)])
def test_reference_run(tmp_path, source, first_x_below):
    manifest = cmd_reference(source, tmp_path)
    rows = _rows(tmp_path / "error_curve.csv")
    assert len(rows) == 5000
    assert float(rows[0]["x"]) < first_x_below
    summary = json.loads((tmp_path / "reference.json").read_text())
    assert summary["table"] == source
    assert summary["residual_norm"] > 0
    assert len(_rows(tmp_path / "params.csv")) == 10
    assert manifest.solver_summary["residual_norm"] == summary["residual_norm"]
    _assert_manifest_complete(tmp_path)


def test_cli_unknown_table_exits_nonzero(tmp_path):
    assert main(["reference", "--table", "table9_a50", "--out", str(tmp_path)]) == 1


def test_single_value_sweep_matches_approximate(tmp_path):
    config = preset("planted_rational")
    cmd_approximate(config, tmp_path / "single")
    cmd_sweep(config, "m", [3], tmp_path / "sweep")
    assert (tmp_path / "sweep" / "m_3" / "params.csv").read_bytes() == (tmp_path / "single" / "params.csv").read_bytes()
    rows = _rows(tmp_path / "sweep" / "summary.csv")
    assert len(rows) == 1 and rows[0]["error"] == ""


def test_sweep_records_failed_rows(tmp_path):
    manifest = cmd_sweep(preset("planted_rational"), "m", [3, 50], tmp_path)
    rows = _rows(tmp_path / "summary.csv")
    assert [r["m"] for r in rows] == ["3", "50"]
    assert rows[0]["error"] == ""
    assert "m=50" in rows[1]["error"]
    assert manifest.solver_summary["sweep"]["failed"] == 1
    _assert_manifest_complete(tmp_path)


def test_l_sweep_runs_one_fit_per_value(tmp_path):
    config = apply_overrides(preset("planted_expsum"), {"m": 1})
    cmd_sweep(config, "l", [10, 20], tmp_path)
    assert (tmp_path / "l_10" / "params.csv").exists()
    assert (tmp_path / "l_20" / "params.csv").exists()
    assert [r["l"] for r in _rows(tmp_path / "summary.csv")] == ["10", "20"]


def test_cli_sweep_flag_parsing(tmp_path):
    code = main(["sweep", "--preset", "planted_expsum", "--sweep", "m=1,2,3", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "summary.csv").exists()


def test_bad_sweep_key_rejected(tmp_path):
    with pytest.raises(ValueError):
        cmd_sweep(preset("planted_expsum"), "n", [10], tmp_path)
