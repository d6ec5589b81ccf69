"""Weighted least squares system for the expanded dictionary.

Rows are scaled by sqrt(w_j) so that ||rhs - A u||^2 is the quadrature sum
sum_j w_j (f(x_j) - pin - sum_k u_k phi(x_j, v_k))^2.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from loguru import logger

from src.approx.dictionary import (
    atom_values,
    family_domain_min,
    target_domain_min,
    target_values,
)
from src.errors import ApproxInputError
from src.models import BasisFamily, CandidateSet, DesignSystem, QuadratureGrid, TargetFunction


def assemble(
    grid: QuadratureGrid,
    family: BasisFamily,
    candidates: CandidateSet,
    target: TargetFunction,
) -> DesignSystem:
    """Build matrix[j, k] = sqrt(w_j) phi(x_j, v_k) and rhs[j] = sqrt(w_j) (f(x_j) - pin)."""
    if grid.n < 1 or candidates.l < 1:
        raise ApproxInputError("design needs a nonempty grid and candidate set")

    x_min = float(grid.nodes[0])
    fam_min = family_domain_min(family.tag)
    if x_min < fam_min:
        raise ApproxInputError(
            f"family {family.tag.value} requires grid nodes x >= {fam_min:g}, got x={x_min}"
        )
    tgt_min = target_domain_min(target)
    if x_min < tgt_min:
        raise ApproxInputError(
            f"target {target.tag.value} requires grid nodes x >= {tgt_min:g}, got x={x_min}"
        )

    sqrt_w = np.sqrt(grid.weights)
    phi = atom_values(family, grid.nodes[:, None], candidates.values[None, :])
    matrix = sqrt_w[:, None] * phi
    rhs = sqrt_w * (target_values(target, grid.nodes) - family.pin_value)

    zero_cols = np.flatnonzero(~np.any(matrix != 0.0, axis=0))
    if zero_cols.size:
        raise ApproxInputError(
            f"{zero_cols.size} dictionary columns vanish on the grid "
            f"(v={candidates.values[zero_cols[:3]].tolist()}...); narrow [c, d]"
        )

    logger.info(
        "Design system assembled: {}x{} ({}, {})",
        matrix.shape[0], matrix.shape[1], family.tag.value, target.tag.value,
    )
    return DesignSystem(
        matrix=matrix,
        rhs=rhs,
        grid=grid,
        candidates=candidates,
        family=family,
        target=target,
    )


def dump_system(system: DesignSystem, path: Path) -> Path:
    """Write the system for debugging.

    `.csv`: first line "n,l", then n rows of l matrix entries followed by rhs[j].
    anything else: binary little-endian int64 n, int64 l, then float64 matrix
    (row-major) and float64 rhs.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n, l = system.shape  # noqa: E741

    if path.suffix.lower() == ".csv":
        table = np.column_stack([system.matrix, system.rhs])
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"{n},{l}\n")
            np.savetxt(f, table, delimiter=",", fmt="%.17g")
    else:
        with open(path, "wb") as f:
            np.array([n, l], dtype="<i8").tofile(f)
            np.ascontiguousarray(system.matrix, dtype="<f8").tofile(f)
            np.ascontiguousarray(system.rhs, dtype="<f8").tofile(f)

    logger.info("System dumped to {}", path)
    return path
