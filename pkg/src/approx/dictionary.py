"""Atom families, target functions and the discretized candidate set V_l."""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.approx.atoms import get_atom
from src.errors import ApproxInputError
from src.models import (
    BasisFamily,
    CandidateSet,
    FamilyKind,
    Spacing,
    TargetFunction,
    TargetKind,
    Term,
)

# Smallest admissible abscissa for each target
TARGET_DOMAIN_MIN: dict[TargetKind, float] = {
    TargetKind.POWER_NEG: 1.0,
    TargetKind.STRETCHED_EXP: 0.0,
}


def family_domain_min(kind: FamilyKind) -> float:
    return get_atom(kind).domain_min


def target_domain_min(target: TargetFunction) -> float:
    if target.tag == TargetKind.PLANTED:
        return family_domain_min(target.planted_family)
    return TARGET_DOMAIN_MIN[target.tag]


def _check_v(kind: FamilyKind, v: np.ndarray) -> None:
    atom = get_atom(kind)
    bad = v < 0 if atom.allows_zero else v <= 0
    if np.any(bad):
        raise ApproxInputError(
            f"family {kind.value} requires v {'>=' if atom.allows_zero else '>'} 0, "
            f"got min v={np.min(v)}"
        )


def _check_x(label: str, x_min: float, x: np.ndarray) -> None:
    if x.size and np.min(x) < x_min:
        raise ApproxInputError(f"{label} requires x >= {x_min:g}, got x={np.min(x)}")


def atom_values(family: BasisFamily | FamilyKind, x, v) -> np.ndarray:
    """Vectorized phi(x, v), broadcasting x against v."""
    kind = family.tag if isinstance(family, BasisFamily) else family
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_v(kind, v)
    _check_x(f"family {kind.value}", family_domain_min(kind), x)
    return get_atom(kind)(x, v)


def eval_atom(family: BasisFamily | FamilyKind, x: float, v: float) -> float:
    """phi(x, v) for one abscissa and one parameter.

    Pinned families return the raw atom minus its value at the pin abscissa,
    so they vanish there exactly.

    Example:
        >>> eval_atom(FamilyKind.EXP_PINNED, 2.0, np.log(2.0))
        -0.75
    """
    return float(atom_values(family, x, v))


def pinned_family(kind: FamilyKind, target: TargetFunction) -> BasisFamily:
    """BasisFamily with pin_value = f(pin abscissa) for pinned kinds, 0 otherwise."""
    atom = get_atom(kind)
    if atom.pin_abscissa is None:
        return BasisFamily(tag=kind, pin_value=0.0)
    return BasisFamily(tag=kind, pin_value=eval_target(target, atom.pin_abscissa))


def build_candidates(
    c: float,
    d: float,
    l: int,  # noqa: E741
    spacing: Spacing = Spacing.GEOMETRIC,
) -> CandidateSet:
    """l candidate values spanning [c, d] inclusive."""
    if c <= 0:
        raise ApproxInputError(f"candidate interval requires c > 0 (atoms need v > 0), got c={c}")
    if not c < d:
        raise ApproxInputError(f"candidate interval requires c < d, got c={c}, d={d}")
    if l < 2:
        raise ApproxInputError(f"candidate set requires l >= 2, got l={l}")

    if spacing == Spacing.GEOMETRIC:
        values = np.geomspace(c, d, l)
    else:
        values = np.linspace(c, d, l)
    # Pin the endpoints exactly
    values[0], values[-1] = c, d

    logger.debug("Candidates: {} values on [{:g}, {:g}] ({})", l, c, d, spacing.value)
    return CandidateSet(values=values, c=float(c), d=float(d), spacing=spacing)


def target_values(target: TargetFunction, x) -> np.ndarray:
    """Vectorized f(x)."""
    x = np.asarray(x, dtype=float)
    _check_x(f"target {target.tag.value}", target_domain_min(target), x)

    if target.tag == TargetKind.POWER_NEG:
        return x ** (-target.alpha)
    if target.tag == TargetKind.STRETCHED_EXP:
        return np.exp(-(x ** target.alpha))

    total = np.full_like(x, target.planted_offset)
    for term in target.planted_terms:
        total = total + term.u * get_atom(target.planted_family)(x, np.float64(term.v))
    return total


def eval_target(target: TargetFunction, x: float) -> float:
    """Exact f(x).

    Example:
        >>> eval_target(TargetFunction(tag=TargetKind.POWER_NEG, alpha=0.5), 4.0)
        0.5
    """
    return float(target_values(target, x))


def planted_target(
    family: FamilyKind,
    terms: list[tuple[float, float]],
    offset: float = 0.0,
) -> TargetFunction:
    """Target built from known atoms, for recovery checks."""
    return TargetFunction(
        tag=TargetKind.PLANTED,
        planted_family=family,
        planted_terms=[Term(u=u, v=v) for u, v in terms],
        planted_offset=offset,
    )
