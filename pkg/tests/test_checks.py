"""Tests for the verification checks."""

import pytest

from ndc2.checks import (
    CHECK_RUNNERS,
    run_check,
    run_classical_limit,
    run_condition10,
    run_confluence,
    run_covariance,
    run_derivative_rules,
    run_numeric,
    run_relations,
)
from ndc2.config import EngineConfig
from ndc2.const import CHECKS
from ndc2.engine import Engine
from ndc2.exceptions import DomainError


def test_every_check_has_a_runner():
    """Test that the runner table covers the check names."""
    assert sorted(CHECK_RUNNERS) == sorted(CHECKS)


def test_relations(engine):
    """Test relation fixpoints and closure under d."""
    report = run_relations(engine, max_level=2, gap_max_level=4, gap=3)
    assert report.passed, report.details
    assert report.data["checked"] > 0


def test_relations_default_bounds(engine):
    """Test the relation check at its default bounds."""
    report = run_check("relations", engine)
    assert report.passed, report.details


def test_confluence(engine):
    """Test the confluence check on a small set."""
    report = run_confluence(engine, max_level=2, word_len=3, samples=20, seed=3)
    assert report.passed, report.details
    assert report.data["words_checked"] == 216 + 20


def test_confluence_default_bounds(engine):
    """Test confluence at levels up to 4 with 1000 random samples."""
    report = run_check("confluence", engine)
    assert report.passed, report.details
    assert report.data["words_checked"] == 10**3 + 1000


def test_covariance(engine):
    """Test covariance and matrix-word confluence."""
    report = run_covariance(engine, max_level=1, qword_len=3)
    assert report.passed, report.details


def test_covariance_default_bounds(engine):
    """Test covariance up to the default level."""
    assert run_check("covariance", engine).passed


def test_condition10(engine):
    """Test the derivation of the consistency condition."""
    report = run_condition10(engine)
    assert report.passed, report.details
    assert report.summary.startswith("condition (10) verified")
    assert report.data["residuals"] >= 2
    assert report.data["remaining"] == 0
    assert report.details[0].startswith("derived: xi[0]*eta[1] = ")


def test_condition10_higher_window(engine):
    """Test the condition on the window of levels 1 and 2."""
    assert run_condition10(engine, base_level=1).passed


def test_derivative_rules(engine):
    """Test the reading adjudication with small bounds."""
    report = run_derivative_rules(engine, max_len=2, max_level=2)
    assert report.passed, report.details
    assert report.data["adjudicated"] == "symmetric"
    assert report.details == []
    assert len(report.data["records"]) == 11


def test_derivative_rules_default_bounds(engine):
    """Test the Leibnitz and operator forms on words up to length 3 and level 3."""
    report = run_check("derivative-rules", engine)
    assert report.passed, report.details
    assert report.data["adjudicated"] == "symmetric"


def test_derivative_rules_printed_reading():
    """Test that shipping the printed reading fails with witnesses."""
    engine = Engine(EngineConfig.from_options({"series_reading": "printed"}))
    report = run_derivative_rules(engine, max_len=2, max_level=2)
    assert not report.passed
    assert report.details


def test_classical_limit(engine):
    """Test the commutative limit p = q = 1."""
    report = run_classical_limit(engine, samples=30)
    assert report.passed, report.details


def test_numeric(engine):
    """Test symbolic against rational rewriting."""
    report = run_numeric(engine, samples=20, seed=5)
    assert report.passed, report.details


def test_report_as_dict(engine):
    """Test JSON-ready reports."""
    data = run_check("covariance", engine, max_level=0).as_dict()
    assert data["name"] == "covariance"
    assert data["passed"] is True


def test_unknown_check(engine):
    """Test that unknown checks are rejected."""
    with pytest.raises(DomainError):
        run_check("everything", engine)


def test_none_options_take_defaults(engine):
    """Test that options left as None are dropped."""
    report = run_check("classical-limit", engine, samples=None, seed=None)
    assert report.passed
    assert report.summary.startswith("500 expressions")
