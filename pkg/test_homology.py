#!/usr/bin/env python3
"""
Tests for the K-theory and periodic cyclic homology tables
"""

import pytest

from src.errors import UsageError
from src.homology import (ISO, ISO_MOD_TORSION, MISMATCH, GradedAbelianGroup, catalogue, chern_character,
                          chern_verdict, compact_data, reduction_chain, verify_catalogue)
from src.orbits import make_orbit
from src.reports import OVERRIDE, PASS


@pytest.mark.fast
def test_compact_data():
    assert compact_data("affR").group == "affR0"
    assert compact_data("affR0").q == 2
    assert compact_data("affC").maximal_compact == "circle"
    assert compact_data("sl2R").weyl_order == 2
    with pytest.raises(UsageError):
        compact_data("so3")


@pytest.mark.fast
def test_group_formatting_and_shift():
    assert str(GradedAbelianGroup.free(1, 1)) == "(Z, Z)"
    assert str(GradedAbelianGroup.free(1, 0)) == "(Z, 0)"
    assert str(GradedAbelianGroup((2, (3,)), (0, ()))) == "(Z^2 + Z/3, 0)"
    assert GradedAbelianGroup.free(1, 0).shift(3) == GradedAbelianGroup.free(0, 1)
    with pytest.raises(UsageError):
        GradedAbelianGroup((1, (1,)), (0, ()))


@pytest.mark.fast
def test_chern_verdicts():
    z = GradedAbelianGroup.free(1, 0)
    assert chern_verdict(z, z) == ISO
    assert chern_verdict(GradedAbelianGroup((1, (2,)), (0, ())), z) == ISO_MOD_TORSION
    assert chern_verdict(GradedAbelianGroup.free(1, 1), z) == MISMATCH


@pytest.mark.fast
def test_reduction_chain_agreement():
    hyperboloid = chern_character(make_orbit("sl2R", "hyperboloid", lam=1))
    assert hyperboloid.chain_agrees
    assert str(hyperboloid.published_K) == "(Z, Z)"
    upper = chern_character(make_orbit("affR", "upper"))
    assert upper.chain_agrees
    assert str(upper.published_K) == "(0, 0)"

    punctured = chern_character(make_orbit("affC", "punctured"))
    assert not punctured.chain_agrees
    assert str(punctured.chain_K) == "(Z, Z)"
    assert str(punctured.published_K) == "(Z, 0)"
    assert punctured.notes
    assert punctured.chern_verdict == ISO


@pytest.mark.fast
def test_point_orbit_chain():
    k, phc, trace = reduction_chain(make_orbit("affR", "point"))
    assert str(k) == "(Z, 0)" and k == phc
    assert any("point algebra" in step for step in trace)


@pytest.mark.fast
def test_catalogue():
    entries = catalogue()
    assert len(entries) == 11
    assert all(e.chern_verdict == ISO for e in entries)
    data = entries[0].to_dict()
    assert {"published_K", "chain_K", "chain_agrees", "trace"} <= set(data)

    report = verify_catalogue()
    assert report.passed
    statuses = {c.case_id: c.status for c in report.cases}
    assert statuses["affC_punctured:chain"] == OVERRIDE
    assert statuses["sl2_hyperboloid:chain"] == PASS

    sl2_only = verify_catalogue(families=("sl2_",))
    assert all(c.case_id.startswith("sl2_") for c in sl2_only.cases)
    assert {c.case_id.split(":")[1] for c in report.cases} == {"chern", "chain"}


# (K_*, PHC_*) as printed for each orbit family
PRINTED_TABLES = {
    "affR_point": ("(Z, 0)", "(Z, 0)"),
    "affR_upper": ("(0, 0)", "(0, 0)"),
    "affR_lower": ("(0, 0)", "(0, 0)"),
    "affC_point": ("(Z, 0)", "(Z, 0)"),
    "affC_punctured": ("(Z, 0)", "(Z, 0)"),
    "sl2_origin": ("(Z, 0)", "(Z, 0)"),
    "sl2_hyperboloid": ("(Z, Z)", "(Z, Z)"),
    "sl2_upper_cone": ("(Z, Z)", "(Z, Z)"),
    "sl2_lower_cone": ("(Z, Z)", "(Z, Z)"),
    "sl2_twofold_upper": ("(Z, Z)", "(Z, Z)"),
    "sl2_twofold_lower": ("(Z, Z)", "(Z, Z)"),
}


@pytest.mark.fast
def test_catalogue_matches_printed_tables():
    tables = {e.orbit.family: (str(e.published_K), str(e.published_PHC)) for e in catalogue()}
    assert tables == PRINTED_TABLES
