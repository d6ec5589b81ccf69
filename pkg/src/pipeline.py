"""SPARSEFIT pipeline: Grid -> Dictionary -> Design -> NNLS -> Select -> Evaluate.

The three CLI commands live here so they can be driven from tests as well
as from scripts/run_pipeline.py.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from loguru import logger

from src.approx.design import assemble, dump_system
from src.approx.dictionary import build_candidates
from src.approx.evaluate import error_curve, load_reference_params
from src.approx.grid import build_grid, refine
from src.approx.nnls import solve_nnls
from src.approx.selector import select
from src.errors import SelectionError
from src.experiments.config_file import apply_overrides, write_config
from src.experiments.presets import REFERENCE_PRESET, preset
from src.export.writers import (
    write_error_curve_csv,
    write_json,
    write_manifest,
    write_params_csv,
    write_params_json,
    write_snapshots_csv,
    write_summary_csv,
    write_trace_csv,
)
from src.models import (
    ErrorReport,
    ExperimentConfig,
    NnlsTrace,
    QuadratureGrid,
    RunManifest,
    SparseApproximant,
)

SWEEP_KEYS = ("m", "l", "alpha")


@contextmanager
def _stage(manifest: RunManifest, name: str) -> Iterator[None]:
    logger.info("--- {} ---", name.upper())
    start = time.perf_counter()
    try:
        yield
    finally:
        manifest.timing[name] = manifest.timing.get(name, 0.0) + time.perf_counter() - start


def fit(
    config: ExperimentConfig,
    manifest: RunManifest,
    dump_path: Path | None = None,
) -> tuple[QuadratureGrid, NnlsTrace]:
    """Build grid, dictionary and system for the config and run the solver."""
    with _stage(manifest, "grid"):
        grid = build_grid(config.a, config.b, config.n, config.transform, config.weight)
        candidates = build_candidates(config.c, config.d, config.l, config.spacing)
    with _stage(manifest, "design"):
        system = assemble(grid, config.family, candidates, config.target)
        if dump_path is not None:
            manifest.outputs.append(str(dump_system(system, dump_path)))
    with _stage(manifest, "nnls"):
        trace = solve_nnls(system, max_outer=config.max_outer)

    manifest.solver_summary.update(
        iterations=len(trace.records),
        terminated=trace.terminated.value,
        support_sizes_attained=trace.attained_sizes,
    )
    return grid, trace


def _eval_grid(config: ExperimentConfig, grid: QuadratureGrid) -> QuadratureGrid:
    return refine(grid, config.eval_n) if config.eval_n else grid


def _write_approximant(
    approx: SparseApproximant,
    report: ErrorReport,
    out_dir: Path,
    manifest: RunManifest,
) -> None:
    manifest.outputs += [
        str(write_params_json(approx, out_dir / "params.json")),
        str(write_params_csv(approx, out_dir / "params.csv")),
        str(write_error_curve_csv(report, out_dir / "error_curve.csv")),
    ]


def _select_and_report(
    config: ExperimentConfig,
    grid: QuadratureGrid,
    trace: NnlsTrace,
    m: int,
    out_dir: Path,
    manifest: RunManifest,
) -> tuple[SparseApproximant, ErrorReport]:
    with _stage(manifest, "select"):
        approx = select(trace, m)
    with _stage(manifest, "evaluate"):
        report = error_curve(approx, _eval_grid(config, grid), config.target)
    _write_approximant(approx, report, out_dir, manifest)
    manifest.solver_summary.update(
        m=m,
        selected_iter=approx.selected_iter,
        residual_norm=approx.residual_norm,
        max_epsilon=report.max_epsilon,
    )
    return approx, report


def cmd_approximate(
    config: ExperimentConfig,
    out_dir: Path,
    snapshots: bool = False,
    dump_path: Path | None = None,
) -> RunManifest:
    """Full run: writes params.json, params.csv, error_curve.csv, trace.csv, manifest.json.

    Raises SelectionError (after writing trace.csv and the manifest) when no
    iteration reached support size config.m.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info("=== approximate START: {} ===", config.name)
    manifest = RunManifest(command="approximate", config=config)
    manifest.outputs.append(str(write_config(config, out_dir / "config.txt")))

    grid, trace = fit(config, manifest, dump_path)
    manifest.outputs.append(str(write_trace_csv(trace, out_dir / "trace.csv")))
    if snapshots:
        manifest.outputs.append(str(write_snapshots_csv(trace, out_dir / "trace_coefficients.csv")))

    try:
        _select_and_report(config, grid, trace, config.m, out_dir, manifest)
    except SelectionError as e:
        manifest.error = str(e)
        write_manifest(manifest, out_dir / "manifest.json")
        raise

    write_manifest(manifest, out_dir / "manifest.json")
    logger.info(
        "=== approximate DONE: m={} iter={} residual={:.6e} max_eps={:.6e} ===",
        config.m,
        manifest.solver_summary["selected_iter"],
        manifest.solver_summary["residual_norm"],
        manifest.solver_summary["max_epsilon"],
    )
    return manifest


def cmd_reference(source: str, out_dir: Path, eval_n: int = 0) -> RunManifest:
    """Evaluate published parameters on the grid of their experiment."""
    out_dir = Path(out_dir)
    logger.info("=== reference START: {} ===", source)
    approx = load_reference_params(source)
    config = preset(REFERENCE_PRESET[source], alpha=approx.target.alpha, m=approx.m)
    if eval_n:
        config = apply_overrides(config, {"eval_n": eval_n})

    manifest = RunManifest(command="reference", config=config)
    with _stage(manifest, "grid"):
        grid = build_grid(config.a, config.b, config.n, config.transform, config.weight)
    with _stage(manifest, "evaluate"):
        report = error_curve(approx, _eval_grid(config, grid), config.target)

    out_dir.mkdir(parents=True, exist_ok=True)
    _write_approximant(approx, report, out_dir, manifest)
    summary = {
        "table": source,
        "preset": config.name,
        "residual_norm": report.residual_norm,
        "max_epsilon": report.max_epsilon,
    }
    manifest.outputs.append(str(write_json(summary, out_dir / "reference.json")))
    manifest.solver_summary.update(summary)
    write_manifest(manifest, out_dir / "manifest.json")

    logger.info(
        "=== reference DONE: {} R_ref={:.6e} max_eps={:.6e} ===",
        source, report.residual_norm, report.max_epsilon,
    )
    return manifest


def _value_label(value: float) -> str:
    return f"{value:g}"


def cmd_sweep(
    config: ExperimentConfig,
    key: str,
    values: list[float],
    out_dir: Path,
) -> RunManifest:
    """Repeat the run over values of m, l or alpha and write summary.csv.

    An m sweep solves once and selects every m from the same trace. A
    failed sub-run is recorded in its summary row.
    """
    if key not in SWEEP_KEYS:
        raise ValueError(f"sweep key must be one of {SWEEP_KEYS}, got '{key}'")
    if not values:
        raise ValueError("sweep needs at least one value")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info("=== sweep START: {} over {} ===", key, values)
    manifest = RunManifest(command="sweep", config=config)
    rows: list[list] = []

    if key == "m":
        grid, trace = fit(config, manifest)
        manifest.outputs.append(str(write_trace_csv(trace, out_dir / "trace.csv")))
        for value in values:
            m = int(value)
            sub_dir = out_dir / f"m_{m}"
            try:
                _, report = _select_and_report(config, grid, trace, m, sub_dir, manifest)
                summary = manifest.solver_summary
                rows.append([m, summary["selected_iter"], summary["residual_norm"], report.max_epsilon, ""])
            except SelectionError as e:
                logger.warning("Sweep m={}: {}", m, e)
                rows.append([m, "", "", "", str(e)])
    else:
        for value in values:
            cast = int(value) if key == "l" else float(value)
            sub_dir = out_dir / f"{key}_{_value_label(cast)}"
            try:
                sub_config = apply_overrides(config, {key: cast})
                sub = cmd_approximate(sub_config, sub_dir)
                manifest.outputs += sub.outputs
                for stage, seconds in sub.timing.items():
                    manifest.timing[stage] = manifest.timing.get(stage, 0.0) + seconds
                s = sub.solver_summary
                rows.append([cast, s["selected_iter"], s["residual_norm"], s["max_epsilon"], ""])
            except (SelectionError, ValueError) as e:
                logger.warning("Sweep {}={}: {}", key, cast, e)
                if sub_dir.exists():
                    manifest.outputs += [str(p) for p in sorted(sub_dir.iterdir()) if p.is_file()]
                rows.append([cast, "", "", "", str(e)])

    manifest.outputs.append(
        str(write_summary_csv(
            [key, "selected_iter", "residual_norm", "max_epsilon", "error"],
            rows,
            out_dir / "summary.csv",
        ))
    )
    manifest.solver_summary["sweep"] = {"key": key, "values": list(values), "failed": sum(1 for r in rows if r[4])}
    write_manifest(manifest, out_dir / "manifest.json")
    logger.info("=== sweep DONE: {} sub-runs, {} failed ===", len(rows), manifest.solver_summary["sweep"]["failed"])
    return manifest
