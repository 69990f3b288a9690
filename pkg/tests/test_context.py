from pathlib import Path

import pytest

from pgl.context import CACHE_ENV, RunConfig, build_config, load_config_file
from pgl.errors import InvalidInput


def test_defaults():
    """A bare command gets the documented defaults."""
    config = build_config("repgrowth", {})
    assert (config.p, config.e, config.n_max, config.k_max) == (2, 1, 4, 4)
    assert config.trials == 100000
    assert config.format == "json"
    assert config.workers == 1


def test_options_override_the_config_file(tmp_path):
    """Explicit options win over file values and None options are ignored."""
    path = tmp_path / "run.yaml"
    path.write_text("group: S3\np: 3\nn_max: 2\n")
    config = build_config("repgrowth", {"p": 5, "n_max": None}, path)
    assert config.group == "S3"
    assert config.p == 5
    assert config.n_max == 2


def test_unknown_keys_in_config_file(tmp_path):
    """Keys that are not configuration fields are rejected."""
    path = tmp_path / "run.yaml"
    path.write_text("group: S3\ncolour: blue\n")
    with pytest.raises(InvalidInput, match="colour"):
        load_config_file(path)


def test_config_file_must_be_a_mapping(tmp_path):
    """A YAML list is not a configuration; an empty file is."""
    path = tmp_path / "run.yaml"
    path.write_text("- S3\n")
    with pytest.raises(InvalidInput):
        load_config_file(path)
    path.write_text("")
    assert load_config_file(path) == {}


@pytest.mark.parametrize(
    "options",
    [{"p": 4}, {"n_max": 0}, {"trials": -1}, {"budget_ms": 0}, {"format": "xml"}],
)
def test_validation_errors_are_invalid_input(options):
    """Validation failures surface as InvalidInput."""
    with pytest.raises(InvalidInput):
        build_config("repgrowth", options)


def test_echo_leaves_out_execution_settings(tmp_path):
    """Cache directory, budget, workers and output format do not change results."""
    config = build_config(
        "repgrowth",
        {"group": "S3", "cache_dir": tmp_path, "budget_ms": 10, "workers": 2, "format": "csv"},
    )
    echo = config.echo()
    assert echo["group"] == "S3"
    assert not {"cache_dir", "budget_ms", "workers", "format", "verbose"} & set(echo)


def test_cache_environment_override(tmp_path, monkeypatch):
    """PGL_CACHE takes precedence over the configured directory."""
    config = RunConfig(command="repgrowth", cache_dir=Path("/nonexistent"))
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert config.resolved_cache_dir() == tmp_path
    monkeypatch.delenv(CACHE_ENV)
    assert config.resolved_cache_dir() == Path("/nonexistent")
