import json

import pytest
from typer.testing import CliRunner

from pgl.cli import app, main

runner = CliRunner()


def _run(*args):
    return runner.invoke(app, list(args))


def test_repgrowth_json():
    """S3 over F_2 prints one row per dimension with the growth exponent in the notes."""
    # Execute
    result = _run("repgrowth", "--group", "S3", "--p", "2", "--nmax", "4")

    # Verify
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["quantity"] == "r"
    assert [(row["n"], row["r"]) for row in record["rows"]] == [(1, 1), (2, 1), (3, 0), (4, 0)]
    assert record["config"]["group"] == "S3"
    assert "uberg_exponent" in record["notes"]
    assert "wall_ms" not in record


def test_repgrowth_csv():
    """CSV output has a header and one line per dimension."""
    result = _run("repgrowth", "-g", "C3", "--nmax", "2", "--format", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["n,r,r_star", "1,1,1", "2,1,0"]


def test_output_is_reproducible():
    """Two runs of the same configuration print the same bytes."""
    args = ("probgen", "--group", "C2xC2", "--kmax", "3", "--quantity", "p_mc", "--trials", "2000")
    first = _run(*args)
    second = _run(*args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["provenance"]["seed"] == 0


def test_probgen_exact_rows():
    """C4 onto C2: P(k) = 1 - 2^-k with the union bound met exactly."""
    result = _run("probgen", "-g", "C4", "--kernel-order", "2", "--kmax", "2")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert [(r["k"], r["p_exact"], r["holds"]) for r in rows] == [(1, "1/2", True), (2, "3/4", True)]


def test_probgen_stable_counts():
    """The maximal stable subgroups of C2 x C2 as the whole kernel."""
    result = _run("probgen", "-g", "C2^2", "--quantity", "m_stable")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["rows"] == [{"index": 2, "count": 3}]


def test_extgrowth_of_c2():
    """C2 has two minimal extensions of degree 2: C4 and C2 x C2."""
    result = _run("extgrowth", "-g", "C2", "--nmax", "2")
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["quantity"] == "e_min_ab"
    (row,) = record["rows"]
    assert (row["degree"], row["count"], row["split"], row["nonsplit"]) == (2, 2, 1, 1)


def test_freegrowth_rows():
    """Pairs in GL_n(F_2) for n = 1, 2 with both bounds."""
    result = _run("freegrowth", "--d", "2", "--p", "2", "--nmax", "2")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert [(r["n"], r["iso_classes"], r["burnside"]) for r in rows] == [(1, 1, 1), (2, 7, 7)]
    assert all(r["holds"] for r in rows)


def test_idealgrowth_rows():
    """F_3[C2] has two maximal ideals of index 3."""
    result = _run("idealgrowth", "-g", "C2", "--p", "3", "--nmax", "1")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["rows"] == [{"n": 1, "r_n": 2, "m_ideal": 2, "holds": True}]


def test_invalid_input_exits_2():
    """A composite characteristic, a missing group and an unknown suite are invalid input."""
    assert _run("repgrowth", "-g", "S3", "--p", "4").exit_code == 2
    assert _run("repgrowth").exit_code == 2
    assert _run("repgrowth", "-g", "S9").exit_code == 2
    assert _run("verify", "no-such-suite").exit_code == 2
    assert _run("freegrowth", "--e", "2", "--nmax", "1").exit_code == 2


def test_budget_refusal_exits_3():
    """GL_4(F_2) is above the conjugation table limit."""
    result = _run("freegrowth", "--d", "1", "--p", "2", "--nmax", "4")
    assert result.exit_code == 3


def test_cache_serves_the_second_run(tmp_path):
    """A cached record is printed unchanged and the entry is on disk."""
    args = ("repgrowth", "-g", "S3", "--nmax", "2", "--cache", str(tmp_path))
    first = _run(*args)
    second = _run(*args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_cache_environment_variable(tmp_path, monkeypatch):
    """PGL_CACHE selects the cache directory."""
    monkeypatch.setenv("PGL_CACHE", str(tmp_path))
    assert _run("repgrowth", "-g", "C2", "--nmax", "1").exit_code == 0
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_config_file(tmp_path):
    """Options may come from a YAML file and the command line overrides them."""
    path = tmp_path / "run.yaml"
    path.write_text("group: S3\np: 3\nn_max: 3\n")
    result = _run("repgrowth", "--config", str(path), "--nmax", "1")
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["config"]["p"] == 3
    assert [row["n"] for row in record["rows"]] == [1]


def test_verify_suite():
    """A passing suite exits 0 with one row per check."""
    result = _run("verify", "convolution")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert rows and all(row["passed"] for row in rows)


def test_main_returns_exit_code(monkeypatch):
    """The console entry point reports the exit code instead of raising."""
    monkeypatch.setattr("sys.argv", ["pgl", "verify", "no-such-suite"])
    assert main() == 2


@pytest.mark.slow
def test_verify_all():
    """Every suite passes."""
    result = _run("verify", "all")
    assert result.exit_code == 0
