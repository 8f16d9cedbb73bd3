from pathlib import Path

import pytest

from auraspace.io import load_map
from auraspace.laws import (
    LAWS,
    MAP_MAX_POINTS,
    TOPICS,
    UnknownLaw,
    get_law,
    iter_source,
    iter_sources,
    law_ids,
    run_all,
    run_law,
    run_laws,
    suite_ok,
)

DATA = Path(__file__).parent / "data"
ASSERTED = [i for i in law_ids() if LAWS[i].kind == "asserted"]
PROBES = [i for i in law_ids() if LAWS[i].kind == "probe"]


def test_every_law_belongs_to_exactly_one_topic():
    listed = [i for ids in TOPICS.values() for i in ids]
    assert sorted(listed) == sorted(law_ids())
    assert len(listed) == len(set(listed))


def test_registry_shape():
    for law in LAWS.values():
        assert law.kind in ("asserted", "probe")
        assert law.statement
        if law.kind == "probe":
            assert law.probe_text is not None
        if law.hypothesis is not None:
            assert law.applies is not None


def test_unknown_law():
    with pytest.raises(UnknownLaw):
        get_law("no_such_law")
    with pytest.raises(UnknownLaw):
        run_law("no_such_law", "fixtures")


def test_asserted_laws_hold_on_fixtures():
    reports = run_laws(ASSERTED, iter_source("fixtures"))
    bad = {r.law_id: [v.describe() for v in r.violations] for r in reports if not r.ok}
    assert set(bad) <= {"decomposition"}, bad


def test_asserted_laws_hold_on_two_point_spaces():
    reports = run_laws(ASSERTED, iter_source("enum:n=2"))
    assert {r.law_id for r in reports if not r.ok} == set()
    maps = {r.law_id: r.maps_checked for r in reports if LAWS[r.law_id].maps}
    assert all(count > 0 for count in maps.values())


def test_improper_ideal_example():
    report = run_law("improper_ideal", "fixture:hier")
    assert report.status == "pass" and report.spaces_checked == 1


def test_strict_inclusion_is_observed():
    report = run_law("star_subset_aura", "fixture:strict-inclusion")
    assert report.ok
    obs = report.observation
    assert obs is not None
    u = obs.space.universe
    assert {k: u.format_set(v) for k, v in obs.subsets.items()}["A"] == "{a}"


def test_transitive_laws_skip_non_transitive_spaces():
    report = run_law("aura_local_vii", "fixture:nonidem4")
    assert report.spaces_skipped == 1 and report.spaces_checked == 0
    assert "transitive fails" in report.summary()


def test_decomposition_counterexample_is_reported():
    fmap = load_map(DATA / "decomposition_map.json")
    report = run_law("decomposition", [fmap.source])
    assert report.status == "fail"
    assert report.violation_count > 0
    assert not suite_ok([report])
    described = [v.describe() for v in report.violations]
    assert any("a->a,b->a,c->b" in d for d in described)


def test_probe_reports_never_fail():
    reports = run_laws(PROBES, iter_source("enum:n=2"))
    assert suite_ok(reports)
    assert all(r.status == "probe-only" for r in reports)


def test_probe_verdicts_at_three_points():
    reports = {r.law_id: r for r in run_laws(
        ["aura_local_vii_nontransitive", "semi_pre_alpha_nontransitive", "chain_tau_containment"],
        iter_source("enum:n=3"),
    )}
    assert reports["aura_local_vii_nontransitive"].violation_count == 0
    assert reports["aura_local_vii_nontransitive"].verdict.endswith("(evidence, not proof)")
    assert reports["semi_pre_alpha_nontransitive"].violation_count > 0
    assert reports["chain_tau_containment"].violation_count > 0


def test_sources():
    assert sum(1 for _ in iter_source("enum:n=2")) == 38
    assert sum(1 for _ in iter_source("enum:n=2..2")) == 36
    spaces = list(iter_source("random:n=4..5,count=30", seed=3))
    assert len(spaces) == 30 and {s.n for s in spaces} <= {4, 5}
    assert spaces == list(iter_source("random:n=4..5,count=30", seed=3))
    assert spaces != list(iter_source("random:n=4..5,count=30", seed=4))
    assert sum(1 for _ in iter_sources(["fixtures", "fixture:hier"])) == 12
    with pytest.raises(FileNotFoundError):
        list(iter_source("nowhere.json"))
    with pytest.raises(ValueError):
        list(iter_source("enum:n=x"))


def test_jobs_do_not_change_reports():
    ids = ["cech_axioms", "open_hierarchy", "continuity_hierarchy", "psi_vii_nontransitive"]
    one = run_laws(ids, iter_source("enum:n=2"))
    two = run_laws(ids, iter_source("enum:n=2"), jobs=2)
    assert [r.to_obj() for r in one] == [r.to_obj() for r in two]


def test_run_all_shape():
    reports = run_all("fixture:hier", probes=False)
    assert [r.law_id for r in reports] == ASSERTED
    assert MAP_MAX_POINTS == 3
    assert all(r.maps_checked == 0 for r in reports)  # hier has four points
