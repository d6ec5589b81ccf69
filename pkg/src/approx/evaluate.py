"""Accuracy of an approximant: pointwise eps(x_j) and the weighted residual."""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.approx.dictionary import pinned_family, target_values
from src.approx.reference import REFERENCE_META, REFERENCE_TERMS
from src.approx.selector import model_values
from src.errors import ApproxInputError
from src.models import (
    ErrorReport,
    QuadratureGrid,
    SparseApproximant,
    TargetFunction,
    Term,
)


def error_curve(
    approx: SparseApproximant,
    grid: QuadratureGrid,
    target: TargetFunction,
) -> ErrorReport:
    """eps(x_j) = |r(x_j) - f(x_j)| and (sum_j w_j (f - r)^2)^(1/2)."""
    diff = model_values(approx, grid.nodes) - target_values(target, grid.nodes)
    epsilon = np.abs(diff)
    residual = float(np.sqrt(np.sum(grid.weights * diff * diff)))
    max_eps = float(np.max(epsilon)) if epsilon.size else 0.0

    logger.debug("Error curve: n={} max_eps={:.6e} residual={:.6e}", grid.n, max_eps, residual)
    return ErrorReport(
        nodes=grid.nodes,
        epsilon=epsilon,
        max_epsilon=max_eps,
        residual_norm=residual,
    )


def reference_target(source: str) -> TargetFunction:
    if source not in REFERENCE_META:
        raise ApproxInputError(
            f"unknown reference table '{source}'; expected one of {sorted(REFERENCE_META)}"
        )
    _, tag, alpha = REFERENCE_META[source]
    return TargetFunction(tag=tag, alpha=alpha)


def load_reference_params(source: str) -> SparseApproximant:
    """Published m = 10 parameters as an approximant with pin_value = 1.

    Example:
        >>> load_reference_params("table1_a50").terms[0]
        Term(u=0.000126366, v=5.816049e-09)
    """
    target = reference_target(source)
    kind, _, _ = REFERENCE_META[source]
    family = pinned_family(kind, target)
    terms = sorted((Term(u=u, v=v) for u, v in REFERENCE_TERMS[source]), key=lambda t: t.v)
    return SparseApproximant(
        terms=terms,
        pin_value=family.pin_value,
        family=family,
        target=target,
    )
