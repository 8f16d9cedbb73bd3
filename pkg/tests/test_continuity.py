from pathlib import Path

import numpy as np
import pytest

from auraspace.classifiers import class_tables
from auraspace.continuity import (
    FLAGS,
    NotTransitive,
    SpaceMap,
    all_tables,
    comparison_chain_check,
    decomposition_check,
    ia_continuity_profile,
    is_continuous,
    preimage_matrix,
    profile_hierarchy_holds,
    sweep_profiles,
    target_family,
)
from auraspace.io import load_fixture, load_map
from auraspace.topologies import gen_tausa_c

DATA = Path(__file__).parent / "data"


def test_preimage_by_hand():
    hier = load_fixture("hier")
    f = SpaceMap(hier, hier, (0, 0, 1, 1))
    assert f.preimage(0b0001) == 0b0011
    assert f.preimage(0b0010) == 0b1100
    assert f.preimage(0b1100) == 0


def test_map_validation():
    hier = load_fixture("hier")
    with pytest.raises(ValueError):
        SpaceMap(hier, hier, (0, 1))
    with pytest.raises(ValueError):
        SpaceMap(hier, hier, (0, 1, 2, 9))


def test_identity_and_constant_are_continuous():
    for name in ("hier", "chain-strict", "nonidem4"):
        s = load_fixture(name)
        ident = ia_continuity_profile(SpaceMap.identity(s), "cech")
        assert all(ident.values())
        const = ia_continuity_profile(SpaceMap.constant(s, s), "topology")
        assert all(const.values())


def test_profile_matches_definition(small_spaces):
    targets = [s for s in small_spaces if s.n == 2][:6]
    sources = small_spaces[::97]
    for src in sources:
        classes = class_tables(src)
        for tgt in targets:
            fam = gen_tausa_c(tgt).opens
            for table in np.ndindex(*(tgt.n,) * src.n):
                f = SpaceMap(src, tgt, table)
                prof = ia_continuity_profile(f, "cech")
                for flag, cls in zip(FLAGS, ("ia_open", "alpha", "semi", "pre", "beta")):
                    want = all(classes[cls][f.preimage(v)] for v in fam)
                    assert prof[flag] == want
                assert profile_hierarchy_holds(prof)


def test_sweep_agrees_with_single_maps(small_spaces):
    src = small_spaces[-5]
    tgt = load_fixture("chain-strict")
    maps = all_tables(src.n, tgt.n)
    fam = list(target_family(tgt, "cech"))
    pre = preimage_matrix(maps, tgt.n)
    swept = sweep_profiles(src, fam, pre)
    for i, table in enumerate(maps):
        prof = ia_continuity_profile(SpaceMap(src, tgt, tuple(int(y) for y in table)), "cech")
        assert {k: bool(swept[k][i]) for k in FLAGS} == prof


def test_target_family_readings():
    s = load_fixture("not-closed")
    assert target_family(s, "topology") == s.topology.opens
    assert target_family(s, "cech") == gen_tausa_c(s).opens
    with pytest.raises(ValueError):
        target_family(s, "other")


def test_is_continuous_witness():
    s = load_fixture("chain-strict")
    f = SpaceMap.identity(s)
    assert is_continuous(f, s.topology.opens, s.topology.opens)


def test_decomposition_counterexample():
    """alpha-continuity without ideal-aura continuity on a transitive source."""
    f = load_map(DATA / "decomposition_map.json")
    assert f.source.is_transitive()
    for reading in ("topology", "cech"):
        report = decomposition_check(f, reading=reading, require_transitive=True)
        assert report.mode == "asserted"
        assert set(report.failures) == {"i", "ii"}
        prof = ia_continuity_profile(f, reading)
        assert prof["alpha"] and not prof["continuous"]


def test_decomposition_needs_transitivity_when_asked():
    src = load_fixture("nonidem4")
    assert not src.is_transitive()
    with pytest.raises(NotTransitive):
        decomposition_check(SpaceMap.identity(src), require_transitive=True)
    assert decomposition_check(SpaceMap.identity(src)).mode == "probe"


def test_comparison_chain_on_identity():
    s = load_fixture("hier")
    report = comparison_chain_check(SpaceMap.identity(s))
    assert report.ok
