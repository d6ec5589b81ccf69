"""Plain-text experiment config in dotenv syntax: `key = value` lines, `#` comments.

Floats are written with repr() so a config read back is bit-identical.
A `preset = <name>` line starts from that preset; the remaining keys
override it.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from loguru import logger

from src.approx.dictionary import pinned_family
from src.errors import ApproxInputError
from src.experiments.presets import preset, validate_config
from src.models import ExperimentConfig, FamilyKind, TargetFunction, TargetKind, Term

_FLOAT_KEYS = ("a", "b", "c", "d")
_INT_KEYS = ("n", "l", "m", "max_outer", "eval_n")
_ENUM_KEYS = ("transform", "weight", "spacing")
_TARGET_KEYS = ("target", "alpha", "planted_family", "planted_terms", "planted_offset")
_KNOWN_KEYS = (
    {"name", "preset", "pinned", "family", "pin_value"}
    | set(_FLOAT_KEYS) | set(_INT_KEYS) | set(_ENUM_KEYS) | set(_TARGET_KEYS)
)


def _checked(raw: dict[str, str | None]) -> dict[str, str]:
    unknown = sorted(set(raw) - _KNOWN_KEYS)
    if unknown:
        raise ApproxInputError(f"config has unknown keys: {unknown}")
    empty = sorted(k for k, v in raw.items() if v is None or not v.strip())
    if empty:
        raise ApproxInputError(f"config keys without a value: {empty}")
    return {k: v.strip() for k, v in raw.items()}


def parse_config_text(text: str) -> dict[str, str]:
    """Key/value pairs of a config document, read with python-dotenv."""
    return _checked(dotenv_values(stream=io.StringIO(text), interpolate=False))


def _format_terms(terms: list[Term]) -> str:
    return "; ".join(f"{t.u!r}@{t.v!r}" for t in terms)


def _parse_terms(text: str) -> list[Term]:
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            u, v = chunk.split("@")
            terms.append(Term(u=float(u), v=float(v)))
    return terms


def config_to_text(config: ExperimentConfig) -> str:
    t = config.target
    lines = [
        "# SPARSEFIT experiment config",
        f"name = {config.name}",
        f"target = {t.tag.value}",
    ]
    if t.alpha is not None:
        lines.append(f"alpha = {t.alpha!r}")
    if t.tag == TargetKind.PLANTED:
        lines += [
            f"planted_family = {t.planted_family.value}",
            f"planted_terms = {_format_terms(t.planted_terms)}",
            f"planted_offset = {t.planted_offset!r}",
        ]
    lines += [
        f"family = {config.family.tag.value}",
        f"pin_value = {config.family.pin_value!r}",
        f"a = {config.a!r}",
        f"b = {config.b!r}",
        f"transform = {config.transform.value}",
        f"weight = {config.weight.value}",
        f"n = {config.n}",
        f"l = {config.l}",
        f"c = {config.c!r}",
        f"d = {config.d!r}",
        f"spacing = {config.spacing.value}",
        f"m = {config.m}",
        f"max_outer = {config.max_outer}",
        f"eval_n = {config.eval_n}",
    ]
    return "\n".join(lines) + "\n"


def apply_overrides(config: ExperimentConfig, overrides: dict[str, Any]) -> ExperimentConfig:
    """New config with the given fields replaced; pin_value follows target and family
    unless it is overridden explicitly."""
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if not overrides:
        return config

    data = config.model_dump()
    target_data = data["target"]
    for key in _TARGET_KEYS:
        if key not in overrides:
            continue
        value = overrides[key]
        if key == "target":
            target_data["tag"] = TargetKind(value)
        elif key == "planted_family":
            target_data["planted_family"] = FamilyKind(value)
        elif key == "planted_terms":
            terms = _parse_terms(value) if isinstance(value, str) else value
            target_data["planted_terms"] = [t.model_dump() if isinstance(t, Term) else t for t in terms]
        else:
            target_data[key] = float(value)
    target = TargetFunction.model_validate(target_data)

    family_tag = FamilyKind(overrides.get("family", config.family.tag))
    family = pinned_family(family_tag, target)
    if "pin_value" in overrides:
        family = family.model_copy(update={"pin_value": float(overrides["pin_value"])})

    for key in _FLOAT_KEYS:
        if key in overrides:
            data[key] = float(overrides[key])
    for key in _INT_KEYS:
        if key in overrides:
            data[key] = int(overrides[key])
    for key in _ENUM_KEYS + ("name",):
        if key in overrides:
            data[key] = overrides[key]
    data["target"] = target.model_dump()
    data["family"] = family.model_dump()

    return validate_config(ExperimentConfig.model_validate(data))


def config_from_mapping(values: dict[str, Any]) -> ExperimentConfig:
    values = dict(values)
    if "preset" in values:
        name = values.pop("preset")
        pinned = str(values.pop("pinned", "true")).lower() in ("true", "1", "yes")
        alpha = float(values.get("alpha", 0.5))
        m = int(values["m"]) if "m" in values else None
        base = preset(name, alpha=alpha, m=m, pinned=pinned)
        return apply_overrides(base, values)

    values.pop("pinned", None)
    missing = {"target", "family", "a", "b", "transform", "weight", "n", "l", "c", "d", "m"} - set(values)
    if missing:
        raise ApproxInputError(f"config without 'preset' is missing keys: {sorted(missing)}")

    target_data: dict[str, Any] = {"tag": values["target"]}
    if "alpha" in values:
        target_data["alpha"] = float(values["alpha"])
    if "planted_family" in values:
        target_data["planted_family"] = values["planted_family"]
    if "planted_terms" in values:
        target_data["planted_terms"] = [t.model_dump() for t in _parse_terms(values["planted_terms"])]
    if "planted_offset" in values:
        target_data["planted_offset"] = float(values["planted_offset"])
    target = TargetFunction.model_validate(target_data)

    family = pinned_family(FamilyKind(values["family"]), target)
    if "pin_value" in values:
        family = family.model_copy(update={"pin_value": float(values["pin_value"])})

    data: dict[str, Any] = {"target": target, "family": family}
    if "name" in values:
        data["name"] = values["name"]
    for key in _FLOAT_KEYS:
        data[key] = float(values[key])
    for key in _INT_KEYS:
        if key in values:
            data[key] = int(values[key])
    for key in _ENUM_KEYS:
        if key in values:
            data[key] = values[key]
    return validate_config(ExperimentConfig.model_validate(data))


def read_config(path: Path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise ApproxInputError(f"config file not found: {path}")
    raw = dotenv_values(dotenv_path=path, interpolate=False, encoding="utf-8")
    config = config_from_mapping(_checked(raw))
    logger.info("Loaded config '{}' from {}", config.name, path)
    return config


def write_config(config: ExperimentConfig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(config_to_text(config), encoding="utf-8")
    return path
