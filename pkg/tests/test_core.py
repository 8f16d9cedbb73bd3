import pytest

from auraspace.core import (
    FiniteTopology,
    Ideal,
    IdealAuraSpace,
    ParseError,
    ScopeFunction,
    SetFamily,
    SpaceError,
    Universe,
    UnknownPoint,
    ideal_from_generators,
    neighborhoods,
    subsets_of,
    validate_ideal,
    validate_topology,
)

U3 = Universe.of_size(3)


def test_universe_names_and_masks():
    assert U3.names == ("a", "b", "c")
    assert U3.full == 0b111
    assert U3.mask(["a", "c"]) == 0b101
    assert U3.names_of(0b110) == ["b", "c"]
    with pytest.raises(ValueError):
        Universe.of_size(25)


@pytest.mark.parametrize("text,mask", [("{}", 0), ("{a,c}", 5), ("a, b", 3), (" { c } ", 4), ("", 0)])
def test_parse_set(text, mask):
    assert U3.parse_set(text) == mask


@pytest.mark.parametrize("text", ["{a,", "{a,,b}", "a}"])
def test_parse_set_rejects_malformed(text):
    with pytest.raises(ParseError):
        U3.parse_set(text)


def test_unknown_point():
    with pytest.raises(UnknownPoint):
        U3.parse_set("{z}")
    with pytest.raises(UnknownPoint):
        U3.check_mask(8)


def test_format_round_trip():
    for m in range(8):
        assert U3.parse_set(U3.format_set(m)) == m


def test_universe_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        Universe(("a", "a"))
    with pytest.raises(ValueError):
        Universe(())


def test_set_family_is_sorted_and_deduplicated():
    fam = SetFamily([5, 1, 5, 0])
    assert fam.members == (0, 1, 5)
    assert fam.encoding() == 0b100011
    assert 5 in fam and 2 not in fam
    assert SetFamily([0, 1]) <= fam
    assert fam.format(U3) == "{{}, {a}, {a,c}}"
    assert list(fam.as_array()) == [0, 1, 5]


def test_topology_violations_are_all_reported():
    with pytest.raises(SpaceError) as err:
        validate_topology(U3, [1, 2])
    kinds = err.value.kinds()
    assert {"MissingEmpty", "MissingFull", "NotUnionClosed"} <= set(kinds)


def test_intersection_failure():
    with pytest.raises(SpaceError) as err:
        validate_topology(U3, [0, 3, 6, 7])
    assert "NotIntersectionClosed" in err.value.kinds()


def test_topology_helpers():
    top = validate_topology(U3, [0, 1, 3, 7])
    assert top.minimal_neighborhoods == (1, 3, 7)
    assert top.neighborhoods(1).members == (3, 7)
    assert top.interior(0b110) == 0
    assert top.closure(0b001) == 0b111
    assert top.closed_sets().members == (0, 4, 6, 7)
    assert len(FiniteTopology.discrete(U3).opens) == 8
    assert FiniteTopology.indiscrete(U3).opens.members == (0, 7)


def test_ideal_validation():
    with pytest.raises(SpaceError) as err:
        validate_ideal(U3, [0, 3])
    assert "NotHereditary" in err.value.kinds()
    with pytest.raises(SpaceError) as err:
        validate_ideal(U3, [0, 1, 2])
    assert err.value.kinds() == ["NotUnionClosed"]
    with pytest.raises(SpaceError):
        validate_ideal(U3, [1])


def test_ideal_constructors():
    assert Ideal.trivial(U3).is_trivial()
    assert Ideal.improper(U3).is_improper()
    below = Ideal.below(U3, 0b101)
    assert below.members.members == (0, 1, 4, 5)
    assert below.top == 0b101
    assert ideal_from_generators(U3, [1, 4]) == below
    assert list(below.membership) == [m in (0, 1, 4, 5) for m in range(8)]


def test_subsets_of_counts():
    assert sorted(subsets_of(0b1011)) == [0, 1, 2, 3, 8, 9, 10, 11]


def test_space_build_reports_scope_errors():
    with pytest.raises(SpaceError) as err:
        IdealAuraSpace.build(U3, [0, 1, 7], [0], [2, 7, 7])
    assert err.value.kinds() == ["NotInOwnAura", "AuraNotOpen"]
    with pytest.raises(SpaceError) as err:
        IdealAuraSpace.build(U3, [0, 7], [0], [7, 7])
    assert err.value.kinds() == ["WrongAuraCount"]


def test_transitivity():
    top = FiniteTopology.discrete(U3)
    assert ScopeFunction(U3, (1, 2, 4)).is_transitive()
    # a -> {a,b}, b -> {b,c}: c lies in aura(b) ⊆ aura(a)? no, so not transitive
    assert not ScopeFunction(U3, (3, 6, 4)).is_transitive()
    assert ScopeFunction.minimal(top).aura == (1, 2, 4)


def test_neighborhoods_by_name():
    space = IdealAuraSpace.build(U3, [0, 1, 3, 7], [0], [1, 3, 7])
    assert neighborhoods(space, "b").members == (3, 7)
    with pytest.raises(UnknownPoint):
        neighborhoods(space, "q")


def test_relabel_and_canonical_key():
    space = IdealAuraSpace.build(U3, [0, 4, 6, 7], [0, 4], [7, 6, 4])
    swapped = space.relabel((2, 1, 0))
    assert swapped.topology.opens.members == (0, 1, 3, 7)
    assert swapped.aura == (1, 3, 7)
    assert swapped.ideal.members.members == (0, 1)
    assert space.canonical_key() == swapped.canonical_key()
    assert swapped.key() == swapped.canonical_key()
