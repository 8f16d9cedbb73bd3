"""Reading and writing space, map and witness files.

A space file is JSON::

    {"format": "auraspace/1",
     "points": ["a","b","c"],
     "opens": [[],["a"],["b"],["a","b"],["a","b","c"]],
     "ideal": {"members": [[],["c"]]},
     "aura": {"a": ["a"], "b": ["a","b"], "c": ["a","b","c"]}}

``ideal`` may give ``generators`` instead of ``members``. Order inside the
file does not matter; :func:`dumps_space` always writes canonical order
(points by index, families by numeric mask).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .core import (
    IdealAuraSpace,
    ParseError,
    SpaceError,
    Universe,
    UnknownPoint,
    Violation,
    ideal_from_generators,
)
from .continuity import SpaceMap

FORMAT = "auraspace/1"
FIXTURE_PACKAGE = "auraspace.fixtures"


def _set(universe: Universe, names: Any, where: str) -> int:
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise ParseError(f"{where}: expected a list of point names, got {names!r}")
    return universe.mask(names)


def space_from_obj(obj: Any) -> IdealAuraSpace:
    """Build and validate a space from decoded JSON; all violations are reported."""
    if not isinstance(obj, dict):
        raise ParseError("space description must be a JSON object")
    fmt = obj.get("format", FORMAT)
    if fmt != FORMAT:
        raise ParseError(f"unsupported format {fmt!r}; expected {FORMAT!r}")
    for key in ("points", "opens", "ideal", "aura"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    try:
        universe = Universe(tuple(obj["points"]))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"points: {exc}") from None

    opens = [_set(universe, o, "opens") for o in obj["opens"]]

    ideal_obj = obj["ideal"]
    if not isinstance(ideal_obj, dict) or len(ideal_obj.keys() & {"members", "generators"}) != 1:
        raise ParseError("ideal must be an object with exactly one of 'members' or 'generators'")
    if "generators" in ideal_obj:
        ideal: Any = ideal_from_generators(
            universe, [_set(universe, g, "ideal.generators") for g in ideal_obj["generators"]]
        )
    else:
        ideal = [_set(universe, m, "ideal.members") for m in ideal_obj["members"]]

    aura_obj = obj["aura"]
    if not isinstance(aura_obj, dict):
        raise ParseError("aura must map point names to lists of point names")
    for name in aura_obj:
        universe.index(name)
    missing = [name for name in universe.names if name not in aura_obj]
    if missing:
        raise SpaceError([Violation("MissingAura", (), universe.index(x)) for x in missing], universe)
    aura = [_set(universe, aura_obj[name], f"aura.{name}") for name in universe.names]
    return IdealAuraSpace.build(universe, opens, ideal, aura)


def space_to_obj(space: IdealAuraSpace) -> dict[str, Any]:
    u = space.universe
    return {
        "format": FORMAT,
        "points": list(u.names),
        "opens": [u.names_of(o) for o in space.topology.opens],
        "ideal": {"members": [u.names_of(m) for m in space.ideal.members]},
        "aura": {name: u.names_of(space.aura[i]) for i, name in enumerate(u.names)},
    }


def _compact(value: Any) -> str:
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)


def dumps_obj(obj: dict[str, Any]) -> str:
    """One top-level key per line, values compact; valid JSON."""
    lines = [f"{_compact(k)}: {_compact(v)}" for k, v in obj.items()]
    return "{" + ",\n ".join(lines) + "}\n"


def dumps_space(space: IdealAuraSpace) -> str:
    return dumps_obj(space_to_obj(space))


def loads_space(text: str) -> IdealAuraSpace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return space_from_obj(obj)


def fixture_names() -> list[str]:
    root = resources.files(FIXTURE_PACKAGE)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_text(name: str) -> str:
    path = resources.files(FIXTURE_PACKAGE) / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no packaged fixture named {name!r}")
    return path.read_text(encoding="utf-8")


def load_fixture(name: str) -> IdealAuraSpace:
    return loads_space(fixture_text(name))


def read_text(path: str | Path) -> str:
    """Read a file; ``fixtures/<name>.json`` falls back to the packaged fixture."""
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    if p.parent.name == "fixtures" and p.suffix == ".json":
        return fixture_text(p.stem)
    raise FileNotFoundError(f"no such file: {path}")


def load_space(path: str | Path) -> IdealAuraSpace:
    return loads_space(read_text(path))


def save_space(space: IdealAuraSpace, path: str | Path) -> None:
    Path(path).write_text(dumps_space(space), encoding="utf-8")


# -- maps --------------------------------------------------------------------

def _space_ref(value: Any, base: Path | None) -> IdealAuraSpace:
    if isinstance(value, str):
        p = Path(value)
        if base is not None and not p.is_absolute() and (base / p).is_file():
            p = base / p
        return load_space(p)
    return space_from_obj(value)


def map_from_obj(obj: Any, base: Path | None = None) -> SpaceMap:
    """``{"source": space|path, "target": space|path, "map": {"a": "x", ...}}``."""
    if not isinstance(obj, dict) or not {"source", "target", "map"} <= obj.keys():
        raise ParseError("map file needs 'source', 'target' and 'map'")
    source = _space_ref(obj["source"], base)
    target = _space_ref(obj["target"], base)
    table_obj = obj["map"]
    if not isinstance(table_obj, dict):
        raise ParseError("'map' must be an object from source points to target points")
    for name in table_obj:
        source.universe.index(name)
    missing = [x for x in source.universe.names if x not in table_obj]
    if missing:
        raise ParseError(f"map is not total; no image for {missing}")
    table = tuple(target.universe.index(table_obj[x]) for x in source.universe.names)
    return SpaceMap(source, target, table)


def map_to_obj(fmap: SpaceMap) -> dict[str, Any]:
    su, tu = fmap.source.universe, fmap.target.universe
    return {
        "source": space_to_obj(fmap.source),
        "target": space_to_obj(fmap.target),
        "map": {su.names[x]: tu.names[y] for x, y in enumerate(fmap.table)},
    }


def load_map(path: str | Path) -> SpaceMap:
    p = Path(path)
    try:
        obj = json.loads(read_text(p))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return map_from_obj(obj, p.parent)


__all__ = [
    "FORMAT",
    "ParseError",
    "SpaceError",
    "UnknownPoint",
    "dumps_obj",
    "dumps_space",
    "fixture_names",
    "load_fixture",
    "load_map",
    "load_space",
    "loads_space",
    "map_from_obj",
    "map_to_obj",
    "read_text",
    "save_space",
    "space_from_obj",
    "space_to_obj",
]
