#!/usr/bin/env python3
"""
Tests for scope resolution and the verification runner
"""

import json
import time
from fractions import Fraction

import pytest

from src.config import ConfigManager
from src.errors import UsageError
from src.liealg import get_algebra
from src.orbits import classify_orbit
from src.reports import OVERRIDE, PASS, SCHEMA_VERSION
from src.symalg import ExactScalar
from src.verification import ORBIT_TABLE, SUITES, VerificationRunner, resolve_scope, run_verification


@pytest.fixture
def quick_config():
    return ConfigManager(None, overrides={'verification': {'profile': "quick", 'jobs': 2}})


@pytest.mark.fast
def test_resolve_scope():
    suites, algebras = resolve_scope("all")
    assert suites == list(SUITES)
    assert algebras == ["affR", "affC", "sl2R"]
    suites, algebras = resolve_scope("sl2R")
    assert "properties" not in suites and algebras == ["sl2R"]
    assert resolve_scope("homology") == (["homology"], ["affR", "affC", "sl2R"])
    with pytest.raises(UsageError):
        resolve_scope("everything")


@pytest.mark.fast
def test_homology_scope_reports_override(quick_config):
    report = run_verification(quick_config, "homology")
    assert report.passed
    data = report.to_dict()
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["status"] == PASS
    assert "poisson_sign" in data["conventions"]
    statuses = {c["case_id"]: c["status"] for c in data["suites"][0]["cases"]}
    assert statuses["affC_punctured:chain"] == OVERRIDE
    assert json.loads(report.to_json())["scope"] == "homology"
    assert "Overall: PASS" in report.format_table()


@pytest.mark.slow
def test_properties_scope(quick_config):
    report = run_verification(quick_config, "properties")
    assert report.passed, report.format_table()
    ids = [c.case_id for c in report.suites[0].cases]
    assert "properties:associativity_h3" in ids
    assert "properties:reciprocal_associativity_h3" in ids


@pytest.mark.slow
def test_standard_properties_suite_within_a_minute():
    config = ConfigManager(None, overrides={'verification': {'profile': "standard", 'jobs': 1}})
    assert config.get('verification', 'property_cases') == 500
    start = time.perf_counter()
    report = run_verification(config, "properties")
    elapsed = time.perf_counter() - start
    assert report.passed, report.format_table()
    assert elapsed < 60.0, f"500 property cases took {elapsed:.1f} s"


@pytest.mark.slow
def test_affr_scope(quick_config):
    report = run_verification(quick_config, "affR")
    assert report.passed, report.format_table()
    names = [s.suite for s in report.suites]
    assert names[0] == "star"
    assert "evolution" in names
    assert report.config["grid"] == 512


def _sign(value):
    return (value > 0) - (value < 0)


@pytest.mark.fast
def test_orbit_table_covers_classification_boundaries():
    assert any(F[1] == 0 for F, _, _ in ORBIT_TABLE["affR"])
    assert any(F[2] == 0 and F[3] == 0 and F[0] != 0 for F, _, _ in ORBIT_TABLE["affC"])
    seen = set()
    for (fx, fh, fy), _, _ in ORBIT_TABLE["sl2R"]:
        x, h, y = Fraction(fx, 2), Fraction(fh, 2), Fraction(-fy, 2)
        seen.add((_sign(x * x + h * h - y * y), _sign(y)))
    assert {(1, 1), (1, -1), (0, 1), (0, -1), (-1, 1), (-1, -1), (0, 0)} <= seen


@pytest.mark.fast
@pytest.mark.parametrize("algebra, F, family, lam", [
    (algebra, F, family, lam) for algebra, rows in ORBIT_TABLE.items() for F, family, lam in rows
])
def test_orbit_table_rows(algebra, F, family, lam):
    found = classify_orbit(algebra, get_algebra(algebra).dual([Fraction(c) for c in F]))
    assert found.family == family
    if lam is None:
        assert found.lam is None
    else:
        assert found.lam == ExactScalar(Fraction(lam))


@pytest.mark.fast
def test_orbits_scope_uses_boundary_table(quick_config):
    report = run_verification(quick_config, "orbits")
    assert report.passed, report.format_table()
    notes = {c.case_id: c.notes for suite in report.suites for c in suite.cases}
    for algebra, rows in ORBIT_TABLE.items():
        assert notes[f"{algebra}:classification"] == f"{len(rows)}/{len(rows)} agree"


@pytest.mark.slow
def test_affc_evolution_suite(quick_config):
    runner = VerificationRunner(quick_config)
    assert [suite for suite, _ in runner.tasks(["evolution"], ["affC"])] == ["evolution"]
    report = runner.affc_evolution_suite()
    assert report.passed, [(c.case_id, c.magnitude) for c in report.cases]
    assert report.config["grid"] == [256, 64]
    ids = [c.case_id for c in report.cases]
    assert "affC:evolve(z=1+i, t=0.25)" in ids
    assert "affC:evolve(w=1/4-1/8i, t=0.25):norm" in ids
