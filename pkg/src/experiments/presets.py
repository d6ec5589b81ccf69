"""Named experiment configurations."""

from __future__ import annotations

from loguru import logger

from src.approx.atoms import get_atom
from src.approx.dictionary import (
    build_candidates,
    family_domain_min,
    pinned_family,
    planted_target,
    target_domain_min,
)
from src.approx.grid import check_domain
from src.approx.reference import REFERENCE_META
from src.config import DEFAULT_MAX_OUTER
from src.errors import ApproxInputError
from src.models import (
    ExperimentConfig,
    FamilyKind,
    Spacing,
    TargetFunction,
    TargetKind,
    TransformKind,
    WeightKind,
)

# Pinned family -> its unpinned counterpart
_RAW_OF = {
    FamilyKind.RATIONAL_PINNED: FamilyKind.RATIONAL_RAW,
    FamilyKind.EXP_PINNED: FamilyKind.EXP_RAW,
}

# Planted atoms: 1-based candidate index -> coefficient
PLANTED_ATOMS: dict[int, float] = {2: 1.0, 7: 0.5, 9: 2.0}

_BASE: dict[str, dict] = {
    # Rational approximation of x^(-alpha) on [1, 1e15].
    # [c, d] is not published; it brackets the recovered v range 2e-13..18.
    "rational_power": {
        "target": TargetKind.POWER_NEG,
        "family": FamilyKind.RATIONAL_PINNED,
        "a": 1.0, "b": 1e15,
        "transform": TransformKind.EXP, "weight": WeightKind.INVERSE_X,
        "n": 5000, "l": 1000, "c": 1e-15, "d": 1e2,
    },
    # Exponential-sum approximation of exp(-x^alpha) on [0, 1e3]
    "expsum_stretched": {
        "target": TargetKind.STRETCHED_EXP,
        "family": FamilyKind.EXP_PINNED,
        "a": 0.0, "b": 1e3,
        "transform": TransformKind.EXP_MINUS_ONE, "weight": WeightKind.INVERSE_ONE_PLUS_X,
        "n": 5000, "l": 1000, "c": 1e-4, "d": 1e4,
    },
    # Recovery checks: target built from three dictionary atoms
    "planted_rational": {
        "target": TargetKind.PLANTED,
        "family": FamilyKind.RATIONAL_PINNED,
        "a": 1.0, "b": 1e6,
        "transform": TransformKind.EXP, "weight": WeightKind.INVERSE_X,
        "n": 400, "l": 10, "c": 1e-4, "d": 1e2,
    },
    "planted_expsum": {
        "target": TargetKind.PLANTED,
        "family": FamilyKind.EXP_PINNED,
        "a": 0.0, "b": 1e2,
        "transform": TransformKind.EXP_MINUS_ONE, "weight": WeightKind.INVERSE_ONE_PLUS_X,
        "n": 400, "l": 10, "c": 1e-2, "d": 1e3,
    },
}

PRESET_NAMES = tuple(_BASE)

# Reference table -> preset whose grid it is evaluated on
REFERENCE_PRESET: dict[str, str] = {
    source: "rational_power" if kind == FamilyKind.RATIONAL_PINNED else "expsum_stretched"
    for source, (kind, _, _) in REFERENCE_META.items()
}


def _planted(kind: FamilyKind, c: float, d: float, l: int, spacing: Spacing) -> TargetFunction:  # noqa: E741
    values = build_candidates(c, d, l, spacing).values
    terms = [(u, float(values[k - 1])) for k, u in PLANTED_ATOMS.items()]
    return planted_target(kind, terms, offset=1.0)


def preset(
    name: str,
    alpha: float = 0.5,
    m: int | None = None,
    pinned: bool = True,
    max_outer: int = DEFAULT_MAX_OUTER,
) -> ExperimentConfig:
    """Fully specified configuration for a named experiment.

    Example:
        >>> preset("expsum_stretched", 0.5, 10).c
        0.0001
    """
    if name not in _BASE:
        raise ApproxInputError(f"unknown preset '{name}'; expected one of {sorted(_BASE)}")
    if m is not None and m < 1:
        raise ApproxInputError(f"term count must be >= 1, got m={m}")
    base = dict(_BASE[name])
    kind: FamilyKind = base.pop("family")
    tag: TargetKind = base.pop("target")

    if tag == TargetKind.PLANTED:
        target = _planted(kind, base["c"], base["d"], base["l"], Spacing.GEOMETRIC)
        m = len(PLANTED_ATOMS) if m is None else m
    else:
        if not 0.0 < alpha < 1.0:
            raise ApproxInputError(f"preset requires 0 < alpha < 1, got alpha={alpha}")
        target = TargetFunction(tag=tag, alpha=alpha)
        m = 10 if m is None else m

    if not pinned:
        kind = _RAW_OF.get(kind, kind)

    config = ExperimentConfig(
        name=name,
        target=target,
        family=pinned_family(kind, target),
        m=m,
        max_outer=max_outer,
        spacing=Spacing.GEOMETRIC,
        **base,
    )
    validate_config(config)
    return config


def validate_config(config: ExperimentConfig) -> ExperimentConfig:
    """Check that grid, family, target and candidate settings fit together."""
    check_domain(config.a, config.b, config.transform, config.weight)

    fam_min = family_domain_min(config.family.tag)
    if config.a < fam_min:
        raise ApproxInputError(
            f"family {config.family.tag.value} requires a >= {fam_min:g}, got a={config.a}"
        )
    tgt_min = target_domain_min(config.target)
    if config.a < tgt_min:
        raise ApproxInputError(
            f"target {config.target.tag.value} requires a >= {tgt_min:g}, got a={config.a}"
        )
    if not 0 < config.c < config.d:
        raise ApproxInputError(f"candidate interval requires 0 < c < d, got c={config.c}, d={config.d}")
    if config.l < 2:
        raise ApproxInputError(f"candidate set requires l >= 2, got l={config.l}")

    pin = get_atom(config.family.tag).pin_abscissa
    if pin is not None and pin != config.a:
        logger.warning(
            "Family {} is pinned at x={:g} but the interval starts at a={:g}",
            config.family.tag.value, pin, config.a,
        )
    return config
