"""Tests for settings and experiment-file loading."""

import json

import pytest

from backend.app.config import DEFAULT_PROTOCOL, Settings, load_experiment_config
from backend.app.errors import DataError
from backend.app.models.basis import BasisKind


def test_defaults_follow_reference_protocol():
    config = load_experiment_config()
    assert config.num_samples == 200
    assert config.ir_length == 50
    assert config.noise_ratio == 10.0
    assert [g.p for g in config.groups] == [10, 20, 30, 40, 50, 60]
    assert all(g.runs == 100 for g in config.groups)
    assert config.em.beta_grid_size == DEFAULT_PROTOCOL["em"]["beta_grid"]
    assert config.system.pole_mag_max == 0.92


def test_toml_file_overrides_defaults(tmp_path):
    path = tmp_path / "experiment.toml"
    path.write_text(
        "\n".join(
            [
                "N = 120",
                "n = 30",
                "seed = 5",
                "groups = [{p = 4, runs = 3}]",
                "[em]",
                "beta_grid = 40",
                "[basis]",
                'kind = "sinusoid"',
                "frequencies = [0.3, 0.7]",
            ]
        ),
        encoding="utf-8",
    )
    config = load_experiment_config(path)
    assert (config.num_samples, config.ir_length, config.seed) == (120, 30, 5)
    assert config.em.beta_grid_size == 40
    assert config.em.restarts == DEFAULT_PROTOCOL["em"]["restarts"]
    assert config.basis.kind == BasisKind.SINUSOID
    assert config.basis.frequencies == [0.3, 0.7]

    settings = config.em_settings()
    assert settings.n == 30 and settings.seed == 5


def test_json_file_by_suffix(tmp_path):
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps({"N": 50, "n": 10, "groups": [{"p": 2, "runs": 1}]}))
    assert load_experiment_config(path).num_samples == 50


def test_cli_overrides_skip_none(tmp_path):
    config = load_experiment_config(overrides={"seed": 99, "output_dir": None})
    assert config.seed == 99
    config = load_experiment_config(overrides={"output_dir": tmp_path})
    assert config.output_dir == tmp_path


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="not found"):
        load_experiment_config(tmp_path / "absent.toml")


def test_unparseable_file(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("N = = 3")
    with pytest.raises(DataError):
        load_experiment_config(path)


@pytest.mark.parametrize(
    "body",
    [
        "unknown_key = 1",
        "N = 10\nn = 20",
        "groups = []",
        "[basis]\nkind = 'custom'",
        "[em]\nbeta_grid = 1",
    ],
)
def test_invalid_values_are_data_errors(tmp_path, body):
    path = tmp_path / "bad.toml"
    path.write_text(body)
    with pytest.raises(DataError) as excinfo:
        load_experiment_config(path)
    assert excinfo.value.exit_code == 2


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("MAX_WORKERS", "3")
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.MAX_WORKERS == 3
    assert settings.LOG_LEVEL == "DEBUG"
    assert settings.BETA_MIN == 1e-4
