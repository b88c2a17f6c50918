#!/usr/bin/env python3
"""
Tests for the orbitquant command line
"""

import json

import pytest

from src.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from src.grammar import parse_expr
from src.orbits import PQ


@pytest.fixture
def run(tmp_path, capsys):
    def invoke(*argv):
        code = main(list(argv) + ["--log-dir", str(tmp_path / "logs")])
        return code, capsys.readouterr()
    return invoke


@pytest.mark.fast
def test_star_text_and_json(run):
    code, out = run("star", "--f", "p", "--g", "exp(q)")
    assert code == EXIT_OK
    assert out.out.strip() == "p*exp(q) + (-1/2 i)*exp(q)"

    code, out = run("star", "--f", "p^2", "--g", "q^2", "--h", "1/2", "--json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["schema_version"] == 1
    assert data["exact"] is True
    assert data["series_bound"] == 2
    assert parse_expr(data["value"], PQ) == parse_expr("p^2*q^2 - i*p*q - 1/8", PQ)


@pytest.mark.fast
def test_orbit_classify(run):
    code, out = run("orbit", "classify", "--algebra", "sl2R", "--point", "0,2,0", "--json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["orbit"]["family"] == "sl2_hyperboloid"
    assert data["orbit"]["params"]["lambda"] == "1"
    assert data["chart"]["variables"] == ["p", "q"]

    code, out = run("orbit", "chart", "--algebra", "affR", "--orbit", "upper", "--A", "0,1", "--json")
    assert code == EXIT_OK
    assert json.loads(out.out)["hamiltonian"] == "exp(q)"


@pytest.mark.fast
def test_orbit_darboux(run):
    code, out = run("orbit", "darboux", "--algebra", "affC", "--orbit", "punctured", "--branch", "1")
    assert code == EXIT_OK
    assert "darboux: PASS" in out.out


@pytest.mark.fast
@pytest.mark.parametrize("argv", [
    ("verify", "--scope", "everything"),
    ("orbit", "classify", "--algebra", "so3", "--point", "0,0,0"),
    ("star", "--f", "p^", "--g", "q"),
    ("star", "--f", "p"),
    ("orbit", "chart", "--algebra", "sl2R", "--orbit", "hyperboloid"),
    ("homology",),
    ("verify", "--config", "/nonexistent/orbitquant.yaml"),
])
def test_usage_errors_exit_2(run, argv):
    code, out = run(*argv)
    assert code == EXIT_USAGE
    assert out.err


@pytest.mark.fast
def test_homology_catalogue(run):
    code, out = run("homology", "--catalogue", "--json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert len(data["catalogue"]) == 11
    punctured = next(e for e in data["catalogue"] if e["orbit"]["family"] == "affC_punctured")
    assert punctured["chain_agrees"] is False

    code, out = run("homology", "--algebra", "sl2R", "--orbit", "hyperboloid", "--lambda", "1/2")
    assert code == EXIT_OK
    assert "K = (Z, Z)" in out.out


@pytest.mark.fast
def test_verify_homology_scope(run):
    code, out = run("verify", "--scope", "homology", "--json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["status"] == "pass"
    assert data["suites"][0]["counts"]["derived-override"] >= 1


@pytest.mark.slow
def test_evolve_affr(run):
    code, out = run("evolve", "--algebra", "affR", "--A", "1,0", "--t", "0.5", "--grid", "512", "--report", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["status"] == "pass"
    assert data["l2_error"] < 1e-3
    assert data["norm_drift"] < 1e-6


@pytest.mark.slow
def test_evolve_sl2_conserves_norm(run):
    code, out = run("evolve", "--algebra", "sl2R", "--A", "0,1,0", "--t", "0.25", "--grid", "256",
                    "--lambda", "1/2", "--json")
    data = json.loads(out.out)
    assert code in (EXIT_OK, EXIT_FAILURE)
    assert data["l2_error"] is None
    assert data["norm_drift"] < 1e-4
