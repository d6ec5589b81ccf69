"""Lawson-Hanson active-set NNLS with a per-outer-iteration trace.

min ||A u - b||^2 subject to u >= 0. The passive set P holds the indices
allowed to be positive, the zero set Z the ones clamped at 0. Each outer
iteration promotes the zero-set index with the largest positive dual
component w = A^T (b - A u); the inner loop restores feasibility by stepping
toward the restricted least squares solution and demoting indices that hit 0.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg
from loguru import logger

from src.config import NNLS_KKT_TOL, NNLS_ZERO_TOL, QR_RANK_RCOND, RESIDUAL_SLACK
from src.errors import ApproxInputError
from src.models import DesignSystem, IterationRecord, NnlsTrace, TerminationReason


class RestrictedSolution(NamedTuple):
    coefficients: np.ndarray  # full length l, zero off the support
    rank: int
    degenerate: bool


def _lstsq_on_columns(
    A: np.ndarray, b: np.ndarray, support: np.ndarray
) -> RestrictedSolution:
    l = A.shape[1]  # noqa: E741
    A_p = A[:, support]
    z = np.zeros(l)

    Q, R, piv = scipy.linalg.qr(A_p, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > QR_RANK_RCOND * diag[0])) if diag.size and diag[0] > 0 else 0

    if rank == len(support):
        y = scipy.linalg.solve_triangular(R, Q.T @ b)
        z_p = np.empty(len(support))
        z_p[piv] = y
        z[support] = z_p
        return RestrictedSolution(z, rank, False)

    # Minimum-norm solution via SVD
    z_p, _, svd_rank, _ = scipy.linalg.lstsq(A_p, b, cond=QR_RANK_RCOND)
    z[support] = z_p
    return RestrictedSolution(z, int(svd_rank), True)


def solve_restricted(system: DesignSystem, support) -> RestrictedSolution:
    """Unconstrained least squares on the columns in `support`.

    Uses a column-pivoted QR factorization; a numerically rank-deficient
    A_P falls back to the minimum-norm solution and sets `degenerate`.
    """
    support = np.asarray(sorted(set(int(k) for k in support)), dtype=int)
    l = system.shape[1]  # noqa: E741
    if support.size == 0:
        raise ApproxInputError("restricted solve needs a nonempty support")
    if support[0] < 0 or support[-1] >= l:
        raise ApproxInputError(f"support indices must lie in [0, {l}), got {support.tolist()}")
    return _lstsq_on_columns(system.matrix, system.rhs, support)


def support_mask(coefficients: np.ndarray, zero_tol: float = NNLS_ZERO_TOL) -> np.ndarray:
    """Entries counted as positive: above zero_tol times the largest coefficient."""
    top = float(np.max(coefficients)) if coefficients.size else 0.0
    if top <= 0:
        return np.zeros(coefficients.shape, dtype=bool)
    return coefficients > zero_tol * top


def _nnls_core(
    A: np.ndarray,
    b: np.ndarray,
    max_outer: int,
    zero_tol: float,
    kkt_tol: float,
) -> tuple[list[IterationRecord], TerminationReason]:
    l = A.shape[1]  # noqa: E741
    x = np.zeros(l)
    passive = np.zeros(l, dtype=bool)
    records: list[IterationRecord] = []

    kkt_threshold = kkt_tol * float(np.max(np.abs(A.T @ b), initial=0.0))
    max_inner = 3 * l
    prev_residual = float(np.linalg.norm(b))

    while True:
        w = A.T @ (b - A @ x)
        zero_set = ~passive
        if not np.any(zero_set) or not np.max(w[zero_set]) > kkt_threshold:
            reason = TerminationReason.KKT_SATISFIED
            break
        if len(records) >= max_outer:
            reason = TerminationReason.MAX_ITERATIONS
            break

        # Indices rejected in this outer step (dependent columns)
        blocked = np.zeros(l, dtype=bool)
        promoted = -1
        z = None
        while True:
            w_z = np.where(zero_set & ~blocked, w, -np.inf)
            t = int(np.argmax(w_z))  # lowest index wins ties
            if not w_z[t] > kkt_threshold:
                break
            passive[t] = True
            sol = _lstsq_on_columns(A, b, np.flatnonzero(passive))
            if sol.degenerate or not sol.coefficients[t] > 0:
                logger.debug("Column {} dependent on passive set, demoted", t)
                passive[t] = False
                blocked[t] = True
                continue
            promoted, z = t, sol.coefficients
            break

        if promoted < 0:
            # Every index with a positive dual is dependent: no progress possible
            logger.warning("NNLS stalled after {} iterations (rank-deficient promotions)", len(records))
            if records:
                records[-1] = records[-1].model_copy(update={"degenerate": True})
            reason = TerminationReason.MAX_ITERATIONS
            break

        degenerate = False
        inner = 0
        while np.any(z[passive] <= 0):
            inner += 1
            if inner > max_inner:
                logger.warning("Inner loop limit reached at outer iteration {}", len(records) + 1)
                degenerate = True
                break
            bad = np.flatnonzero(passive & (z <= 0))
            ratios = x[bad] / (x[bad] - z[bad])
            j = int(np.argmin(ratios))
            x = x + float(ratios[j]) * (z - x)
            x[bad[j]] = 0.0
            # Demote indices that vanished
            passive &= x > 0
            x[~passive] = 0.0
            if not np.any(passive):
                z = np.zeros(l)
                break
            sol = _lstsq_on_columns(A, b, np.flatnonzero(passive))
            degenerate = degenerate or sol.degenerate
            z = sol.coefficients

        x = np.where(passive, np.maximum(z, 0.0), 0.0)
        residual = float(np.linalg.norm(b - A @ x))
        support_size = int(np.sum(support_mask(x, zero_tol)))
        records.append(
            IterationRecord(
                iter=len(records) + 1,
                residual_norm=residual,
                support_size=support_size,
                coefficients=x.copy(),
                degenerate=degenerate,
            )
        )
        if residual > prev_residual * (1.0 + RESIDUAL_SLACK):
            logger.warning(
                "Residual rose at iteration {}: {:.6e} -> {:.6e}",
                len(records), prev_residual, residual,
            )
        prev_residual = residual
        logger.debug(
            "NNLS iter {}: residual={:.6e} support={} promoted={}",
            len(records), residual, support_size, promoted,
        )

    return records, reason


def solve_nnls(
    system: DesignSystem,
    max_outer: int = 500,
    zero_tol: float = NNLS_ZERO_TOL,
    kkt_tol: float = NNLS_KKT_TOL,
) -> NnlsTrace:
    """Run Lawson-Hanson on the system and record every outer iteration.

    Args:
        system: assembled design system
        max_outer: cap on outer iterations
        zero_tol: support threshold, relative to the largest coefficient
        kkt_tol: dual tolerance, relative to ||A^T b||_inf

    Returns:
        NnlsTrace; terminated is KktSatisfied when Z is empty or max_Z w <= tol,
        MaxIterations when the cap was hit or no promotion made progress.
    """
    if max_outer < 1:
        raise ApproxInputError(f"max_outer must be >= 1, got {max_outer}")
    if not (zero_tol > 0 and kkt_tol > 0):
        raise ApproxInputError(f"tolerances must be positive, got zero_tol={zero_tol}, kkt_tol={kkt_tol}")

    records, reason = _nnls_core(system.matrix, system.rhs, max_outer, zero_tol, kkt_tol)
    if records:
        logger.info(
            "NNLS done: {} outer iterations, {}, final residual={:.6e}, support={}",
            len(records), reason.value, records[-1].residual_norm, records[-1].support_size,
        )
    else:
        logger.info("NNLS done: no iterations ({})", reason.value)

    return NnlsTrace(
        records=records,
        terminated=reason,
        zero_tol=zero_tol,
        candidate_values=system.candidates.values,
        family=system.family,
        target=system.target,
    )


def solve_arrays(
    A,
    b,
    max_outer: int = 500,
    zero_tol: float = NNLS_ZERO_TOL,
    kkt_tol: float = NNLS_KKT_TOL,
) -> tuple[list[IterationRecord], TerminationReason]:
    """Lawson-Hanson on plain arrays, without dictionary provenance."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2 or b.shape != (A.shape[0],):
        raise ApproxInputError(f"shape mismatch: A {A.shape}, b {b.shape}")
    return _nnls_core(A, b, max_outer, zero_tol, kkt_tol)
