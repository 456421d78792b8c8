"""CLI surfaces: subcommands, JSON round trips, exit codes, determinism."""

import json

import pytest

from gammahodge import betti
from gammahodge.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_PARTIAL,
    main,
)

HOLLOW = '{"maximal": [[0, 1], [1, 2], [0, 2]]}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# betti

def test_betti_surface_example(capsys):
    doc = run_json(capsys, "betti", "--input", '{"d":2,"beta":[0,3,0]}', "--n-max", "5")
    assert doc["b"] == ["1", "3", "3", "1", "0", "0"]
    assert doc["vanishing"] == {"K0": "3"}


def test_betti_trivial_base(capsys):
    doc = run_json(capsys, "betti", "--input", '{"d":1,"beta":[0,0]}', "--n-max", "4")
    assert doc["b"] == ["1", "0", "0", "0", "0"]


def test_betti_output_round_trips(capsys):
    doc = run_json(capsys, "betti", "--input", '{"d":3,"beta":[0,1,1,0]}', "--n-max", "6")
    report = betti.report_from_json(doc)
    assert betti.report_to_json(report) == doc
    assert report.b == tuple(betti.config_betti(report.input, n) for n in range(7))


def test_betti_malformed_json_exits_2(capsys):
    code, _, err = run(capsys, "betti", "--input", '{"d": 2, "beta": [0, 3')
    assert code == EXIT_INPUT
    assert "error" in err


def test_betti_bad_vector_exits_2(capsys):
    code, _, _ = run(capsys, "betti", "--input", '{"d": 2, "beta": [0, 3]}')
    assert code == EXIT_INPUT


def test_betti_file_input_and_atomic_output(tmp_path, capsys):
    src = tmp_path / "vector.json"
    src.write_text('{"d": 2, "beta": [0, 2, 0]}')
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "betti", "--input", str(src), "--output", str(out), "--n-max", "3")
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["b"] == ["1", "2", "1", "0"]
    assert not list(tmp_path.glob("*.tmp"))


# ---------------------------------------------------------------------------
# algebra-check

def test_algebra_check_small_grid(capsys):
    grid = '{"l_max": 2, "degree_max": 2, "dim_max": 1, "m_max": 3, "n_max": 4, "betti_d_max": 2, "betti_beta_max": 1, "betti_n_max": 3}'
    code, out, err = run(capsys, "algebra-check", "--grid", grid)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["summary"]["mismatches"] == "0"
    assert doc["summary"]["skipped"] == "0"
    assert all(row["status"] == "ok" for row in doc["rows"])


def test_algebra_check_cap_skips_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("GAMMAHODGE_WORD_CAP", "2")
    grid = '{"l_max": 1, "degree_max": 1, "dim_max": 2, "m_max": 2, "n_max": 2, "betti_d_max": 1, "betti_beta_max": 1, "betti_n_max": 2}'
    code, out, _ = run(capsys, "algebra-check", "--grid", grid)
    assert code == EXIT_PARTIAL
    doc = json.loads(out)
    assert int(doc["summary"]["skipped"]) > 0
    assert any(row["status"] == "skipped" for row in doc["rows"])


def test_algebra_check_rejects_unknown_grid_keys(capsys):
    code, _, err = run(capsys, "algebra-check", "--grid", '{"bogus": 3}')
    assert code == EXIT_INPUT


# ---------------------------------------------------------------------------
# simplicial

def test_simplicial_hollow_triangle(capsys):
    doc = run_json(capsys, "simplicial", "--input", HOLLOW)
    assert doc["betti"] == ["1", "1"]
    rows = {row["k"]: row for row in doc["decomposition"]}
    assert rows["1"]["harmonic"] == "1"
    assert rows["1"]["exact"] == "2"
    assert rows["1"]["coexact"] == "0"


def test_simplicial_kron_probes_deterministic(capsys):
    args = ("simplicial", "--input", HOLLOW, "--kron-probes", "5", "--seed", "3")
    first = run_json(capsys, *args)
    second = run_json(capsys, *args)
    assert first == second
    assert len(first["kron_probes"]) == 5
    for row in first["kron_probes"]:
        assert row["computed"] == row["predicted"]


def test_simplicial_invalid_complex_exits_2(capsys):
    code, _, _ = run(capsys, "simplicial", "--input", '{"maximal": [[0, 0]]}')
    assert code == EXIT_INPUT


# ---------------------------------------------------------------------------
# poisson

POISSON_SPEC = (
    '{"check":"mecke","m":2,"window":{"dim":2,"lengths":[1.0,2.0]},'
    '"samples":2000,"seed":42,"f":{"g":"indicator","h":"const"}}'
)


def test_poisson_spec_runs_and_is_deterministic(capsys):
    first = run_json(capsys, "poisson", "--input", POISSON_SPEC)
    second = run_json(capsys, "poisson", "--input", POISSON_SPEC)
    assert first == second
    assert first["samples"] == "2000"
    assert float(first["rel_error"]) < 0.25


def test_poisson_seed_flag_overrides(capsys):
    base = run_json(capsys, "poisson", "--input", POISSON_SPEC)
    other = run_json(capsys, "poisson", "--input", POISSON_SPEC, "--seed", "7")
    assert other["seed"] == "7"
    assert other["estimate"] != base["estimate"]


def test_poisson_requires_seed(capsys):
    spec = '{"check":"laplace","window":{"dim":1,"lengths":[2.0]},"samples":100,"f":"indicator"}'
    code, _, err = run(capsys, "poisson", "--input", spec)
    assert code == EXIT_INPUT
    assert "seed" in err


# ---------------------------------------------------------------------------
# pipeline

def test_pipeline_hollow_triangle_infinite_volume(capsys):
    doc = run_json(
        capsys, "pipeline", "--input", HOLLOW, "--infinite-volume", "--n-max", "3"
    )
    assert doc["input"]["beta"] == [0, 1]
    assert doc["b"] == ["1", "1", "0", "0"]
    assert doc["beta_source"]["infinite_volume_override"] is True
    assert doc["beta_source"]["complex_betti"] == ["1", "1"]


def test_pipeline_without_override_records_beta0(capsys):
    with pytest.warns(betti.InfiniteVolumeWarning):
        doc = run_json(capsys, "pipeline", "--input", HOLLOW, "--n-max", "3")
    assert doc["input"]["beta"] == [1, 1]
    assert doc["beta_source"]["infinite_volume_override"] is False
    # the formula ignores beta_0 either way
    assert doc["b"] == ["1", "1", "0", "0"]


def test_pipeline_empty_complex(capsys):
    doc = run_json(capsys, "pipeline", "--input", '{"maximal": []}', "--n-max", "4")
    assert doc["b"] == ["1", "0", "0", "0", "0"]


def test_pipeline_marked_path_matches_direct_convolution(capsys):
    marked = json.dumps(
        {
            "complex": {"maximal": [[0, 1], [1, 2], [0, 2]]},
            "mark": {"maximal": [[0, 1], [1, 2], [0, 2]]},
        }
    )
    doc = run_json(
        capsys, "pipeline", "--input", marked, "--infinite-volume", "--n-max", "6"
    )
    # base (0, 1) convolved with circle (1, 1) by hand
    assert doc["input"]["beta"] == [0, 1, 1]
    direct = run_json(
        capsys, "betti", "--input", '{"d": 2, "beta": [0, 1, 1]}', "--n-max", "6"
    )
    assert doc["b"] == direct["b"]
    assert doc["beta_source"]["mark_betti"] == ["1", "1"]
