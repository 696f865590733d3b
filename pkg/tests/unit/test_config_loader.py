import pytest

from src.config_loader import expand_env_vars, load_config, load_settings, merge_defaults, validate_config
from src.errors import InputError


def test_expand_env_vars(monkeypatch):
    monkeypatch.setenv("FOO", "bar")
    cfg = {"a": "$FOO", "nested": {"b": "$FOO"}, "plain": "x"}

    out = expand_env_vars(cfg)

    assert out["a"] == "bar"
    assert out["nested"]["b"] == "bar"
    assert out["plain"] == "x"


def test_load_config(tmp_path):
    p = tmp_path / "conf.yaml"
    p.write_text("x: 1\ny: two\n", encoding="utf-8")

    data = load_config(str(p))

    assert data == {"x": 1, "y": "two"}


def test_load_config_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "nope.yaml"))


def test_merge_defaults_keeps_overrides():
    merged = merge_defaults({"engine": {"depth": 6}})

    assert merged["engine"]["depth"] == 6
    assert merged["engine"]["node_budget"] == 100000
    assert merged["sampling"]["seed"] == 7


def test_validate_config_reports_missing():
    assert validate_config({"engine": {"depth": 1}}, ["engine"]) is True
    assert validate_config({"engine": {}}, ["engine", "window"]) is False


def test_load_settings_defaults_without_file(tmp_path):
    settings = load_settings(str(tmp_path / "absent.yaml"))

    assert settings["window"]["length"] == 4
    assert settings["logging"]["file"] == "pathnet.log"


def test_load_settings_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PATHNET_DEPTH", "6")
    p = tmp_path / "conf.yaml"
    p.write_text("engine:\n  depth: $PATHNET_DEPTH\n", encoding="utf-8")

    settings = load_settings(str(p))

    assert settings["engine"]["depth"] == 6


def test_load_settings_rejects_bad_values(tmp_path):
    p = tmp_path / "conf.yaml"
    p.write_text("sampling:\n  samples: none\n", encoding="utf-8")

    with pytest.raises(InputError):
        load_settings(str(p))
