"""Model selection over the NNLS trace.

The NNLS iteration count plays the role of the sparsity knob: among the
iterations whose support size equals m, take the one with the smallest
residual and read off its positive coefficients.
"""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.approx.dictionary import atom_values
from src.approx.nnls import support_mask
from src.errors import ApproxInputError, SelectionError
from src.models import IterationRecord, NnlsTrace, SparseApproximant, Term


def best_record(trace: NnlsTrace, m: int) -> IterationRecord:
    """Record with support_size == m and minimal residual; earliest on ties."""
    if m < 1:
        raise ApproxInputError(f"term count must be >= 1, got m={m}")
    matching = [r for r in trace.records if r.support_size == m]
    if not matching:
        raise SelectionError(m, trace.attained_sizes)
    # min() keeps the first of equal keys
    return min(matching, key=lambda r: r.residual_norm)


def select(trace: NnlsTrace, m: int) -> SparseApproximant:
    """Extract the m-term approximant from the trace."""
    record = best_record(trace, m)
    mask = support_mask(record.coefficients, trace.zero_tol)
    idx = np.flatnonzero(mask)
    terms = [
        Term(u=float(record.coefficients[k]), v=float(trace.candidate_values[k]))
        for k in idx
    ]
    terms.sort(key=lambda t: t.v)

    logger.info(
        "Selected iteration {} for m={} (residual={:.6e})",
        record.iter, m, record.residual_norm,
    )
    return SparseApproximant(
        terms=terms,
        pin_value=trace.family.pin_value,
        family=trace.family,
        target=trace.target,
        selected_iter=record.iter,
        residual_norm=record.residual_norm,
    )


def model_values(approx: SparseApproximant, x) -> np.ndarray:
    """Vectorized pin_value + sum u_i phi(x, v_i)."""
    x = np.asarray(x, dtype=float)
    total = np.full_like(x, approx.pin_value)
    if not approx.terms:
        return total
    u = np.array([t.u for t in approx.terms])
    v = np.array([t.v for t in approx.terms])
    phi = atom_values(approx.family, x[..., None], v)
    return total + phi @ u


def evaluate_model(approx: SparseApproximant, x: float) -> float:
    """r(x) = pin_value + sum u_i phi(x, v_i)."""
    return float(model_values(approx, x))
