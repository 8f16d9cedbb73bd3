import json

import pytest

from auraspace.core import ParseError, SpaceError, UnknownPoint
from auraspace.io import (
    dumps_space,
    fixture_names,
    fixture_text,
    load_fixture,
    load_map,
    load_space,
    loads_space,
    map_from_obj,
    map_to_obj,
    save_space,
)
from auraspace.search import Witness

BASE = {
    "points": ["a", "b"],
    "opens": [[], ["a"], ["a", "b"]],
    "ideal": {"members": [[]]},
    "aura": {"a": ["a"], "b": ["a", "b"]},
}


def _with(**changes):
    obj = json.loads(json.dumps(BASE))
    obj.update(changes)
    return json.dumps(obj)


def test_fixtures_are_present():
    assert len(fixture_names()) == 11
    assert "hier" in fixture_names()


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_round_trip(name):
    space = load_fixture(name)
    text = dumps_space(space)
    again = loads_space(text)
    assert again == space
    assert dumps_space(again) == text


# fixtures written with ideal generators serialize back as members
MEMBER_FIXTURES = [n for n in fixture_names() if '"generators"' not in fixture_text(n)]


@pytest.mark.parametrize("name", MEMBER_FIXTURES)
def test_packaged_fixtures_are_canonical(name):
    assert dumps_space(load_fixture(name)) == fixture_text(name)


def test_generators_form(tmp_path):
    space = loads_space(_with(ideal={"generators": [["b"]]}))
    assert space.ideal.members.members == (0, 2)
    path = tmp_path / "s.json"
    save_space(space, path)
    assert load_space(path) == space


@pytest.mark.parametrize(
    "text,error",
    [
        ("{", ParseError),
        ("[]", ParseError),
        (_with(format="other/9"), ParseError),
        (_with(ideal={"members": [[]], "generators": []}), ParseError),
        (_with(aura={"a": ["a"]}), SpaceError),
        (_with(aura={"a": ["a"], "b": ["a", "b"], "z": ["a"]}), UnknownPoint),
        (_with(opens=[["a"]]), SpaceError),
        (_with(opens="a"), ParseError),
        (_with(points=["a", "a"]), ParseError),
        (_with(ideal={"members": [["a"]]}), SpaceError),
        (json.dumps({k: v for k, v in BASE.items() if k != "aura"}), ParseError),
    ],
)
def test_rejections(text, error):
    with pytest.raises(error):
        loads_space(text)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_space("no/such/file.json")
    with pytest.raises(FileNotFoundError):
        load_space("fixtures/absent.json")


def test_fixture_path_falls_back_to_package():
    assert load_space("fixtures/hier.json") == load_fixture("hier")


def test_map_round_trip(tmp_path):
    src = load_fixture("hier")
    (tmp_path / "hier.json").write_text(dumps_space(src))
    obj = {"source": "hier.json", "target": "hier.json", "map": {"a": "b", "b": "b", "c": "d", "d": "a"}}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    fmap = load_map(path)
    assert fmap.table == (1, 1, 3, 0)
    assert map_from_obj(map_to_obj(fmap)) == fmap


def test_partial_map_rejected():
    src = json.loads(dumps_space(load_fixture("hier")))
    with pytest.raises(ParseError):
        map_from_obj({"source": src, "target": src, "map": {"a": "a"}})
    with pytest.raises(ParseError):
        map_from_obj({"source": src})


def test_witness_rejections():
    with pytest.raises(ParseError):
        Witness.from_obj(BASE)
    with pytest.raises(ParseError):
        Witness.from_obj({**BASE, "witness": {"subsets": {}}})
