"""Finite universes, bitmask point sets, set families and ideal-aura spaces.

A subset of an ``n``-point universe is a plain ``int`` whose low ``n`` bits
mark membership; bit ``i`` stands for the point ``universe.names[i]``.
Every structure above that (topologies, ideals, scope functions) is stored
extensionally and is immutable once built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_POINTS = 24


class ParseError(ValueError):
    """Malformed input text (set expressions, space files)."""


class UnknownPoint(ParseError, KeyError):
    """A point label or index that is not part of the universe."""

    def __str__(self) -> str:
        return Exception.__str__(self)


@dataclass(frozen=True)
class Violation:
    """One failed axiom, with the sets or point that witness the failure."""

    kind: str
    sets: tuple[int, ...] = ()
    point: int | None = None

    def describe(self, universe: Universe | None = None) -> str:
        fmt = universe.format_set if universe is not None else bin
        parts = [fmt(s) for s in self.sets]
        if self.point is not None:
            parts.insert(0, universe.names[self.point] if universe is not None else str(self.point))
        return f"{self.kind}({', '.join(parts)})"


class SpaceError(ValueError):
    """Raised when a family, ideal or scope function violates its axioms.

    ``violations`` holds every failure found, not only the first one.
    """

    def __init__(self, violations: Iterable[Violation], universe: Universe | None = None):
        self.violations = list(violations)
        self.universe = universe
        super().__init__("; ".join(v.describe(universe) for v in self.violations))

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]


# -- bitmask helpers ---------------------------------------------------------

def points_of(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


# -- universe ----------------------------------------------------------------

@dataclass(frozen=True)
class Universe:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(str(x) for x in self.names))
        if not 1 <= len(self.names) <= MAX_POINTS:
            raise ValueError(f"universe must have between 1 and {MAX_POINTS} points, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            dupes = sorted({x for x in self.names if self.names.count(x) > 1})
            raise ValueError(f"duplicate point names: {dupes}")

    @classmethod
    def of_size(cls, n: int) -> Universe:
        """Points named ``a, b, c, ...``."""
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._lookup[name]
        except KeyError:
            raise UnknownPoint(f"unknown point {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names_of(self, mask: int) -> list[str]:
        return [self.names[i] for i in points_of(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.names_of(mask)) + "}"

    def parse_set(self, text: str) -> int:
        """Parse ``{a,c}`` (braces optional, blanks ignored); ``{}`` is empty."""
        body = text.strip()
        if body.startswith("{") != body.endswith("}"):
            raise ParseError(f"unbalanced braces in set expression {text!r}")
        if body.startswith("{"):
            body = body[1:-1]
        items = [t.strip() for t in body.split(",")]
        if items == [""]:
            return 0
        if any(not t for t in items):
            raise ParseError(f"empty element in set expression {text!r}")
        return self.mask(items)

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full:
            raise UnknownPoint(f"mask {mask:#x} has bits outside a {self.n}-point universe")


# -- families ----------------------------------------------------------------

class SetFamily:
    """Deduplicated collection of bitmask sets in ascending numeric order."""

    __slots__ = ("members", "_index")

    def __init__(self, members: Iterable[int] = ()):
        self.members: tuple[int, ...] = tuple(sorted(set(members)))
        self._index = frozenset(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self._index

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SetFamily):
            return self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"SetFamily({list(self.members)})"

    def __le__(self, other: SetFamily) -> bool:
        return self._index <= other._index

    def __lt__(self, other: SetFamily) -> bool:
        return self._index < other._index

    def encoding(self) -> int:
        """Integer with bit ``m`` set for every member ``m``; orders families."""
        code = 0
        for m in self.members:
            code |= 1 << m
        return code

    def as_array(self) -> np.ndarray:
        return np.fromiter(self.members, dtype=np.int64, count=len(self.members))

    def format(self, universe: Universe) -> str:
        return "{" + ", ".join(universe.format_set(m) for m in self.members) + "}"


def _membership(family: SetFamily, n: int) -> np.ndarray:
    member = np.zeros(1 << n, dtype=bool)
    if len(family):
        member[family.as_array()] = True
    return member


def _closure_failures(family: SetFamily, n: int, op: str) -> list[tuple[int, int]]:
    """Pairs ``A < B`` of members whose union/intersection is missing."""
    if len(family) < 2:
        return []
    arr = family.as_array()
    combined = arr[:, None] | arr[None, :] if op == "union" else arr[:, None] & arr[None, :]
    bad = ~_membership(family, n)[combined]
    i, j = np.nonzero(np.triu(bad, k=1))
    return [(int(arr[a]), int(arr[b])) for a, b in zip(i, j)]


def _check_members(universe: Universe, family: SetFamily) -> list[Violation]:
    return [Violation("OutsideUniverse", (m,)) for m in family if m < 0 or m & ~universe.full]


# -- topology ----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteTopology:
    universe: Universe
    opens: SetFamily

    @classmethod
    def discrete(cls, universe: Universe) -> FiniteTopology:
        return cls(universe, SetFamily(range(universe.full + 1)))

    @classmethod
    def indiscrete(cls, universe: Universe) -> FiniteTopology:
        return cls(universe, SetFamily({0, universe.full}))

    def __contains__(self, mask: object) -> bool:
        return mask in self.opens

    def closed_sets(self) -> SetFamily:
        full = self.universe.full
        return SetFamily(full & ~o for o in self.opens)

    def neighborhoods(self, x: int) -> SetFamily:
        if not 0 <= x < self.universe.n:
            raise UnknownPoint(f"point index {x} outside a {self.universe.n}-point universe")
        return SetFamily(o for o in self.opens if o >> x & 1)

    @cached_property
    def minimal_neighborhoods(self) -> tuple[int, ...]:
        """Smallest open set around each point (finite spaces always have one)."""
        out = []
        for x in range(self.universe.n):
            u = self.universe.full
            for o in self.opens:
                if o >> x & 1:
                    u &= o
            out.append(u)
        return tuple(out)

    def interior(self, a: int) -> int:
        r = 0
        for o in self.opens:
            if o & ~a == 0:
                r |= o
        return r

    def closure(self, a: int) -> int:
        full = self.universe.full
        return full & ~self.interior(full & ~a)


def topology_violations(universe: Universe, family: SetFamily) -> list[Violation]:
    out = _check_members(universe, family)
    if out:
        return out
    if 0 not in family:
        out.append(Violation("MissingEmpty"))
    if universe.full not in family:
        out.append(Violation("MissingFull"))
    out += [Violation("NotUnionClosed", p) for p in _closure_failures(family, universe.n, "union")]
    out += [Violation("NotIntersectionClosed", p) for p in _closure_failures(family, universe.n, "intersection")]
    return out


def validate_topology(universe: Universe, family: Iterable[int] | SetFamily) -> FiniteTopology:
    """Check the topology axioms; raise :class:`SpaceError` listing every failure."""
    family = family if isinstance(family, SetFamily) else SetFamily(family)
    violations = topology_violations(universe, family)
    if violations:
        raise SpaceError(violations, universe)
    return FiniteTopology(universe, family)


# -- ideal -------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    universe: Universe
    members: SetFamily

    @classmethod
    def trivial(cls, universe: Universe) -> Ideal:
        return cls(universe, SetFamily({0}))

    @classmethod
    def improper(cls, universe: Universe) -> Ideal:
        return cls(universe, SetFamily(range(universe.full + 1)))

    @classmethod
    def below(cls, universe: Universe, top: int) -> Ideal:
        """The ideal of all subsets of ``top``."""
        return cls(universe, SetFamily(subsets_of(top)))

    def __contains__(self, mask: object) -> bool:
        return mask in self.members

    @cached_property
    def top(self) -> int:
        """Union of all members; a finite ideal is exactly the powerset of it."""
        t = 0
        for m in self.members:
            t |= m
        return t

    @cached_property
    def membership(self) -> np.ndarray:
        return _membership(self.members, self.universe.n)

    def is_trivial(self) -> bool:
        return self.members.members == (0,)

    def is_improper(self) -> bool:
        return len(self.members) == 1 << self.universe.n


def ideal_violations(universe: Universe, family: SetFamily) -> list[Violation]:
    out = _check_members(universe, family)
    if out:
        return out
    if 0 not in family:
        out.append(Violation("MissingEmpty"))
    for a in family:
        for b in subsets_of(a):
            if b not in family:
                out.append(Violation("NotHereditary", (a, b)))
    out += [Violation("NotUnionClosed", p) for p in _closure_failures(family, universe.n, "union")]
    return out


def validate_ideal(universe: Universe, family: Iterable[int] | SetFamily) -> Ideal:
    family = family if isinstance(family, SetFamily) else SetFamily(family)
    violations = ideal_violations(universe, family)
    if violations:
        raise SpaceError(violations, universe)
    return Ideal(universe, family)


def ideal_from_generators(universe: Universe, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing every generator."""
    top = 0
    for g in gens:
        universe.check_mask(g)
        top |= g
    # every subset of a finite union of generators; on a finite set that is
    # the powerset of the union of all of them
    return Ideal.below(universe, top)


# -- scope function ----------------------------------------------------------

@dataclass(frozen=True)
class ScopeFunction:
    universe: Universe
    aura: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.aura[x]

    def is_transitive(self) -> bool:
        """``y`` in aura(x) implies aura(y) within aura(x)."""
        aura = self.aura
        return all(aura[y] & ~aura[x] == 0 for x in range(len(aura)) for y in points_of(aura[x]))

    @classmethod
    def minimal(cls, topology: FiniteTopology) -> ScopeFunction:
        """Each point's smallest open neighbourhood."""
        return cls(topology.universe, topology.minimal_neighborhoods)


def scope_violations(topology: FiniteTopology, aura: Sequence[int]) -> list[Violation]:
    universe = topology.universe
    if len(aura) != universe.n:
        return [Violation("WrongAuraCount", (len(aura),))]
    out = []
    for x, a in enumerate(aura):
        if not a >> x & 1:
            out.append(Violation("NotInOwnAura", (a,), x))
        if a not in topology.opens:
            out.append(Violation("AuraNotOpen", (a,), x))
    return out


# -- the quadruple -----------------------------------------------------------

@dataclass(frozen=True)
class IdealAuraSpace:
    universe: Universe
    topology: FiniteTopology
    ideal: Ideal
    scope: ScopeFunction
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def build(
        cls,
        universe: Universe,
        opens: Iterable[int],
        ideal: Iterable[int] | Ideal,
        aura: Sequence[int],
    ) -> IdealAuraSpace:
        """Validate every component and raise one error listing all failures."""
        opens = SetFamily(opens)
        violations = topology_violations(universe, opens)
        if isinstance(ideal, Ideal):
            ideal_family = ideal.members
        else:
            ideal_family = SetFamily(ideal)
            violations += ideal_violations(universe, ideal_family)
        topology = FiniteTopology(universe, opens)
        violations += scope_violations(topology, tuple(aura))
        if violations:
            raise SpaceError(violations, universe)
        return cls(universe, topology, Ideal(universe, ideal_family), ScopeFunction(universe, tuple(aura)))

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def full(self) -> int:
        return self.universe.full

    @property
    def aura(self) -> tuple[int, ...]:
        return self.scope.aura

    def is_transitive(self) -> bool:
        key = "transitive"
        if key not in self._cache:
            self._cache[key] = self.scope.is_transitive()
        return self._cache[key]

    def with_ideal(self, ideal: Ideal) -> IdealAuraSpace:
        return IdealAuraSpace(self.universe, self.topology, ideal, self.scope)

    def relabel(self, perm: Sequence[int]) -> IdealAuraSpace:
        """Move point ``i`` to index ``perm[i]`` (names stay with their index)."""
        def pm(m: int) -> int:
            return permute_mask(m, perm)

        aura = [0] * self.n
        for i, a in enumerate(self.aura):
            aura[perm[i]] = pm(a)
        return IdealAuraSpace(
            self.universe,
            FiniteTopology(self.universe, SetFamily(pm(o) for o in self.topology.opens)),
            Ideal(self.universe, SetFamily(pm(j) for j in self.ideal.members)),
            ScopeFunction(self.universe, tuple(aura)),
        )

    def key(self) -> tuple[int, int, tuple[int, ...]]:
        """Ordering key: topology encoding, ideal encoding, aura tuple."""
        return (self.topology.opens.encoding(), self.ideal.members.encoding(), self.aura)

    def canonical_key(self) -> tuple[int, int, tuple[int, ...]]:
        """Smallest :meth:`key` over all relabelings of the points."""
        if "canonical" not in self._cache:
            self._cache["canonical"] = min(
                self.relabel(p).key() for p in itertools.permutations(range(self.n))
            )
        return self._cache["canonical"]


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i in points_of(mask):
        out |= 1 << perm[i]
    return out


def neighborhoods(space: IdealAuraSpace, x: int | str) -> SetFamily:
    """All open sets containing ``x`` (an index or a point name)."""
    if isinstance(x, str):
        x = space.universe.index(x)
    return space.topology.neighborhoods(x)


def classical_closure(space: IdealAuraSpace, a: int) -> int:
    return space.topology.closure(a)


def classical_interior(space: IdealAuraSpace, a: int) -> int:
    return space.topology.interior(a)
