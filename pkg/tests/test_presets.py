"""Preset registry and TOML configuration loading."""

import pytest

from galext.presets import (
    PRESETS,
    ConfigError,
    build_extension,
    resolve_file,
    resolve_preset,
    resolve_toml,
)

TORIC_TOML = """
[pointed]
group = [2, 2]
bichar_exponents = [[0, 1], [0, 0]]

[pointed.labels]
"0,0" = "1"
"0,1" = "e"
"1,0" = "m"
"1,1" = "psi"

[subcategory]
generators = ["e"]

[run]
backend = "exact"
seed = 3
"""


def test_preset_names_and_defaults():
    assert set(PRESETS) == {"toric-code", "ds3", "repz4-z2", "toric-x-repz2",
                            "drinfeld-z2", "corrupted-hexagon"}
    assert PRESETS["ds3"].default_backend == "float"
    assert PRESETS["toric-code"].default_backend == "exact"


def test_resolve_preset_defaults_and_overrides():
    cfg = resolve_preset("toric-code")
    assert cfg.backend == "exact" and cfg.tol == 1e-9 and cfg.seed == 0
    assert cfg.spec.labels == ["1", "e"]
    cfg = resolve_preset("toric-code", backend="float", tol=1e-7, seed=5)
    assert cfg.backend == "float" and cfg.tol == 1e-7 and cfg.seed == 5
    assert not cfg.cat.exact


def test_resolve_preset_errors():
    with pytest.raises(ConfigError):
        resolve_preset("nope")
    with pytest.raises(ConfigError):
        resolve_preset("toric-code", backend="quad")
    with pytest.raises(ConfigError):
        resolve_preset("toric-code", tol=-1.0)


def test_resolve_toml_inline_pointed():
    cfg = resolve_toml(TORIC_TOML, name="inline-toric")
    assert cfg.example == "inline-toric"
    assert cfg.backend == "exact" and cfg.seed == 3
    assert sorted(s.label for s in cfg.cat.simples) == ["1", "e", "m", "psi"]
    fr, ext = build_extension(cfg)
    assert [s.label for s in ext.ext_simples()] == ["1", "m"]


def test_resolve_file_round_trip(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(TORIC_TOML)
    cfg = resolve_file(str(path))
    assert cfg.backend == "exact"
    # flag overrides beat file values
    cfg = resolve_file(str(path), backend="float", seed=9)
    assert cfg.backend == "float" and cfg.seed == 9


def test_resolve_toml_group_category():
    text = """
[group]
preset = "S3"
kind = "double"

[subcategory]
generators = ["e:chi2"]
"""
    cfg = resolve_toml(text)
    assert len(cfg.cat.simples) == 8
    assert cfg.backend == "float"  # schema default


def test_resolve_toml_preset_reference():
    text = """
[category]
preset = "toric-code"
"""
    cfg = resolve_toml(text)
    assert cfg.example == "toric-code" and cfg.backend == "exact"


def test_resolve_toml_errors():
    with pytest.raises(ConfigError):
        resolve_toml("not [ valid")
    with pytest.raises(ConfigError):
        resolve_toml("[run]\nbackend = 'exact'\n")  # no category at all
    with pytest.raises(ConfigError):
        resolve_toml(TORIC_TOML + "\n[group]\npreset = 'S3'\n")  # both kinds
    with pytest.raises(ConfigError):  # missing generators
        resolve_toml("""
[pointed]
group = [2]
bichar_exponents = [[0]]
""")
    with pytest.raises(ConfigError):  # unknown group preset
        resolve_toml("""
[group]
preset = "M11"

[subcategory]
generators = ["chi0"]
""")
    with pytest.raises(ConfigError):  # bad kind
        resolve_toml("""
[group]
preset = "S3"
kind = "affine"

[subcategory]
generators = ["chi0"]
""")
    with pytest.raises(ConfigError):
        resolve_file("/nonexistent/path.toml")
