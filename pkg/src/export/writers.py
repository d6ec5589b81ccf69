"""File writers for run outputs: CSV tables, JSON documents, manifest.

Every file is written to a temporary sibling and moved into place, so a
crashed run never leaves a half-written file behind.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Iterable

import numpy as np
from loguru import logger

from src.approx.nnls import support_mask
from src.config import CSV_FLOAT_FORMAT
from src.models import ErrorReport, NnlsTrace, RunManifest, SparseApproximant


def _fmt(value: float) -> str:
    return format(float(value), CSV_FLOAT_FORMAT)


def atomic_write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(tmp, path)
    return path


def _csv_text(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_params_csv(approx: SparseApproximant, path: Path) -> Path:
    """Columns i, u, v in the layout of the published parameter tables."""
    rows = ([i, _fmt(t.u), _fmt(t.v)] for i, t in enumerate(approx.terms, 1))
    return atomic_write_text(path, _csv_text(["i", "u", "v"], rows))


def approximant_document(approx: SparseApproximant) -> dict:
    target = approx.target
    return {
        "family": approx.family.tag.value,
        "target": target.tag.value if target else None,
        "alpha": target.alpha if target else None,
        "pin_value": approx.pin_value,
        "terms": [[t.u, t.v] for t in approx.terms],
        "selected_iter": approx.selected_iter,
        "residual_norm": approx.residual_norm,
    }


def write_json(document: dict, path: Path) -> Path:
    # json uses repr() for floats: full round-trip precision
    return atomic_write_text(path, json.dumps(document, indent=2, ensure_ascii=False) + "\n")


def write_params_json(approx: SparseApproximant, path: Path) -> Path:
    return write_json(approximant_document(approx), path)


def write_trace_csv(trace: NnlsTrace, path: Path) -> Path:
    rows = ([r.iter, _fmt(r.residual_norm), r.support_size] for r in trace.records)
    return atomic_write_text(path, _csv_text(["iter", "residual_norm", "support_size"], rows))


def write_snapshots_csv(trace: NnlsTrace, path: Path) -> Path:
    """Positive coefficients of every outer iteration: iter, k, v, u."""
    rows = []
    for r in trace.records:
        for k in np.flatnonzero(support_mask(r.coefficients, trace.zero_tol)):
            rows.append([r.iter, int(k) + 1, _fmt(trace.candidate_values[k]), _fmt(r.coefficients[k])])
    return atomic_write_text(path, _csv_text(["iter", "k", "v", "u"], rows))


def write_error_curve_csv(report: ErrorReport, path: Path) -> Path:
    rows = ([_fmt(x), _fmt(e)] for x, e in zip(report.nodes, report.epsilon))
    return atomic_write_text(path, _csv_text(["x", "epsilon"], rows))


def write_summary_csv(header: list[str], rows: list[list], path: Path) -> Path:
    formatted = [[_fmt(v) if isinstance(v, float) else v for v in row] for row in rows]
    return atomic_write_text(path, _csv_text(header, formatted))


def write_manifest(manifest: RunManifest, path: Path) -> Path:
    path = Path(path)
    if str(path) not in manifest.outputs:
        manifest.outputs.append(str(path))
    missing = [p for p in manifest.outputs if p != str(path) and not Path(p).exists()]
    if missing:
        logger.warning("Manifest lists files that do not exist: {}", missing)
    atomic_write_text(path, manifest.model_dump_json(indent=2) + "\n")
    logger.info("Manifest written: {} ({} files)", path, len(manifest.outputs))
    return path
