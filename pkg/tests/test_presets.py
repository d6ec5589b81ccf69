import pytest

from src.errors import ApproxInputError
from src.experiments.config_file import (
    apply_overrides,
    config_to_text,
    parse_config_text,
    read_config,
    write_config,
)
from src.experiments.presets import PRESET_NAMES, preset
from src.models import FamilyKind, TargetKind, TransformKind, WeightKind


def test_expsum_preset():
    config = preset("expsum_stretched", 0.5, 10)
    assert (config.c, config.d, config.n, config.l) == (1e-4, 1e4, 5000, 1000)
    assert (config.a, config.b) == (0.0, 1e3)
    assert config.transform == TransformKind.EXP_MINUS_ONE
    assert config.weight == WeightKind.INVERSE_ONE_PLUS_X
    assert config.family.tag == FamilyKind.EXP_PINNED
    assert config.family.pin_value == 1.0


def test_rational_preset():
    config = preset("rational_power", 0.5, 10)
    assert (config.b, config.n, config.l) == (1e15, 5000, 1000)
    assert (config.c, config.d) == (1e-15, 1e2)
    assert config.target.tag == TargetKind.POWER_NEG
    assert config.max_outer == 500


def test_single_term_preset():
    assert preset("rational_power", 0.5, 1).m == 1


def test_unpinned_preset_uses_raw_family():
    config = preset("expsum_stretched", pinned=False)
    assert config.family.tag == FamilyKind.EXP_RAW
    assert config.family.pin_value == 0.0


def test_planted_preset_defaults_to_three_terms():
    config = preset("planted_rational")
    assert config.m == 3
    assert len(config.target.planted_terms) == 3


@pytest.mark.parametrize(
    "kwargs",
    [{"name": "rational"}, {"name": "rational_power", "alpha": 1.0}, {"name": "rational_power", "m": 0}],
)
def test_bad_preset_arguments_rejected(kwargs):
    with pytest.raises(ApproxInputError):
        preset(**kwargs)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_round_trip_through_config_file(tmp_path, name):
    config = preset(name, alpha=0.3, pinned=name != "expsum_stretched")
    path = write_config(config, tmp_path / f"{name}.cfg")
    assert read_config(path) == config
    assert config_to_text(read_config(path)) == path.read_text()


def test_round_trip_keeps_awkward_floats(tmp_path):
    config = apply_overrides(preset("expsum_stretched"), {"alpha": 0.1 + 0.2, "d": 1e4 / 3})
    assert read_config(write_config(config, tmp_path / "c.cfg")) == config


def test_override_alpha_updates_target():
    config = apply_overrides(preset("rational_power"), {"alpha": 0.75, "m": 5, "n": None})
    assert config.target.alpha == 0.75
    assert config.m == 5
    assert config.n == 5000


def test_override_rejects_incompatible_interval():
    with pytest.raises(ApproxInputError, match="a >= 1"):
        apply_overrides(preset("rational_power"), {"a": 0.5})


def test_override_pin_value_is_explicit():
    config = apply_overrides(preset("expsum_stretched"), {"pin_value": 0.9})
    assert config.family.pin_value == 0.9


def test_config_file_with_preset_line(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# sweep base\npreset = rational_power\nalpha = 0.25\nm = 7  # fewer terms\n")
    config = read_config(path)
    assert config.name == "rational_power"
    assert config.target.alpha == 0.25
    assert config.m == 7


def test_config_without_preset_needs_every_key(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("target = PowerNeg\nalpha = 0.5\n")
    with pytest.raises(ApproxInputError, match="missing keys"):
        read_config(path)


@pytest.mark.parametrize(
    "text, message",
    [
        ("colour = red", "unknown keys"),
        ("alpha", "without a value"),
        ("preset = rational_power\nalpha =", "without a value"),
    ],
)
def test_bad_config_keys_rejected(text, message):
    with pytest.raises(ApproxInputError, match=message):
        parse_config_text(text)


def test_config_text_quoting_and_comments():
    values = parse_config_text('name = "sweep #3"\n\n# base\npreset=rational_power   # rational\nm = 7\n')
    assert values == {"name": "sweep #3", "preset": "rational_power", "m": "7"}


def test_missing_config_file(tmp_path):
    with pytest.raises(ApproxInputError, match="not found"):
        read_config(tmp_path / "absent.cfg")
