"""Quadrature grids on [a, b]: midpoint rule in a transformed variable theta.

theta runs uniformly over [theta(a), theta(b)]; node x_j is the image of the
j-th midpoint and its weight is rho(x_j) * x'(theta_j) * dtheta, computed from
the Jacobian rather than by differencing nodes.
"""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.errors import ApproxInputError
from src.models import QuadratureGrid, TransformKind, WeightKind

# Smallest admissible a for each transform (theta(a) >= 0 for the log maps)
TRANSFORM_DOMAIN_MIN: dict[TransformKind, float] = {
    TransformKind.IDENTITY: -np.inf,
    TransformKind.EXP: 1.0,
    TransformKind.EXP_MINUS_ONE: 0.0,
}

# Pairs where rho(x) * x'(theta) == 1 identically
_UNIT_DENSITY = {
    (TransformKind.IDENTITY, WeightKind.UNIT),
    (TransformKind.EXP, WeightKind.INVERSE_X),
    (TransformKind.EXP_MINUS_ONE, WeightKind.INVERSE_ONE_PLUS_X),
}


def to_theta(transform: TransformKind, x):
    if transform == TransformKind.EXP:
        return np.log(x)
    if transform == TransformKind.EXP_MINUS_ONE:
        return np.log1p(x)
    return np.asarray(x, dtype=float)


def from_theta(transform: TransformKind, theta):
    if transform == TransformKind.EXP:
        return np.exp(theta)
    if transform == TransformKind.EXP_MINUS_ONE:
        return np.expm1(theta)
    return np.asarray(theta, dtype=float)


def jacobian(transform: TransformKind, theta):
    """dx/dtheta."""
    if transform == TransformKind.IDENTITY:
        return np.ones_like(theta, dtype=float)
    return np.exp(theta)


def weight_function(weight: WeightKind, x):
    """rho(x)."""
    x = np.asarray(x, dtype=float)
    if weight == WeightKind.INVERSE_X:
        return 1.0 / x
    if weight == WeightKind.INVERSE_ONE_PLUS_X:
        return 1.0 / (1.0 + x)
    return np.ones_like(x)


def check_domain(a: float, b: float, transform: TransformKind, weight: WeightKind) -> None:
    """Raise ApproxInputError if [a, b] is invalid for the transform or weight."""
    if not a < b:
        raise ApproxInputError(f"interval requires a < b, got a={a}, b={b}")
    a_min = TRANSFORM_DOMAIN_MIN[transform]
    if a < a_min:
        raise ApproxInputError(
            f"transform {transform.value} requires a >= {a_min:g} (theta >= 0), got a={a}"
        )
    if weight == WeightKind.INVERSE_X and a < 0:
        raise ApproxInputError(f"weight InverseX requires x > 0 on the grid, got a={a}")
    if weight == WeightKind.INVERSE_ONE_PLUS_X and a <= -1:
        raise ApproxInputError(f"weight InverseOnePlusX requires x > -1 on the grid, got a={a}")


def build_grid(
    a: float,
    b: float,
    n: int,
    transform: TransformKind = TransformKind.IDENTITY,
    weight: WeightKind = WeightKind.UNIT,
) -> QuadratureGrid:
    """Build the midpoint quadrature grid.

    Args:
        a, b: interval endpoints, a < b
        n: number of partial intervals (and nodes), n >= 1
        transform: variable change x = x(theta)
        weight: weight function rho(x)

    Returns:
        QuadratureGrid with strictly increasing nodes inside (a, b)

    Example:
        >>> build_grid(1.0, np.e, 1, TransformKind.EXP, WeightKind.INVERSE_X).weights
        array([1.])
    """
    if n < 1:
        raise ApproxInputError(f"grid requires n >= 1, got n={n}")
    check_domain(a, b, transform, weight)

    theta_a = float(to_theta(transform, a))
    theta_b = float(to_theta(transform, b))
    beta = theta_b - theta_a
    dtheta = beta / n
    theta = theta_a + (np.arange(n, dtype=float) + 0.5) * dtheta
    nodes = from_theta(transform, theta)

    if (transform, weight) in _UNIT_DENSITY:
        weights = np.full(n, dtheta)
    else:
        weights = weight_function(weight, nodes) * jacobian(transform, theta) * dtheta

    if n > 1 and not np.all(np.diff(nodes) > 0):
        raise ApproxInputError(
            f"grid nodes are not strictly increasing (n={n} too fine for [{a}, {b}])"
        )

    logger.debug(
        "Grid: [{}, {}] n={} transform={} weight={} beta={:.6g}",
        a, b, n, transform.value, weight.value, beta,
    )
    return QuadratureGrid(
        nodes=nodes,
        weights=weights,
        n=n,
        a=float(a),
        b=float(b),
        beta=beta,
        transform=transform,
        weight=weight,
    )


def refine(grid: QuadratureGrid, n: int) -> QuadratureGrid:
    """Same interval, transform and weight with a different node count."""
    return build_grid(grid.a, grid.b, n, grid.transform, grid.weight)
