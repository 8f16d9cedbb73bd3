import time

import pytest

from auraspace.corpus import EXPECTATIONS, Expectation, evaluate, run_paper_corpus
from auraspace.io import fixture_names, load_fixture


def test_every_expectation_matches():
    start = time.perf_counter()
    report = run_paper_corpus()
    assert time.perf_counter() - start < 1.0
    assert report.ok, [(r.expectation, r.got) for r in report.failures]
    assert len(report.rows) == len(EXPECTATIONS)


def test_every_fixture_is_used():
    assert {e.fixture for e in EXPECTATIONS} == set(fixture_names())


def test_only_filter():
    report = run_paper_corpus(only=["hier"])
    assert report.rows and all(r.expectation.fixture == "hier" for r in report.rows)


def test_corrupted_fixture_turns_rows_red():
    good = load_fixture("strict-inclusion")
    # the improper ideal swallows every set, so no aura-local set survives
    broken = good.with_ideal(type(good.ideal).improper(good.universe))
    report = run_paper_corpus(only=["strict-inclusion"], spaces={"strict-inclusion": broken})
    assert not report.ok
    assert any(r.expectation.op == "aura_local" for r in report.failures)


def test_family_comparison_ignores_order():
    row = run_paper_corpus(expectations=[Expectation("hier", "ideal_members", "", ["{d}", "{}"], "x")]).rows[0]
    assert row.ok


def test_unknown_operation():
    with pytest.raises(ValueError):
        evaluate(load_fixture("hier"), "bogus", "")
