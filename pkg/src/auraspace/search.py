"""Enumeration and sampling of finite ideal-aura spaces, and witness search.

Exhaustive order: topologies by family encoding, then ideals by encoding,
then scope functions lexicographically by their aura tuple. That is the
order of :meth:`IdealAuraSpace.key`, so the first witness found is always
the smallest one, and (every predicate being label-free) already in
canonical form.

Random mode builds space ``i`` of a run from its own generator
``stream_for(seed, i)``, so any index range can be regenerated on its own
and scanned in parallel.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterator

import numpy as np

from . import operators as ops
from .classifiers import class_tables, classify
from .continuity import SpaceMap, all_tables, comparison_chain_check, decomposition_check, preimage_matrix
from .core import (
    FiniteTopology,
    Ideal,
    IdealAuraSpace,
    ScopeFunction,
    SetFamily,
    Universe,
)
from .io import dumps_obj, space_from_obj, space_to_obj
from .operators import tables
from .rng import XorShift64Star, stream_for
from .topologies import gen_tau_aura, gen_tau_star, gen_tausa, gen_tausa_c

MAX_N = 6
EXHAUSTIVE_ALL_MAX = 4
EXHAUSTIVE_DISCRETE_MAX = 6
DEFAULT_BUDGET = 10_000


class ScaleRefused(ValueError):
    """The requested exhaustive enumeration is beyond the supported size."""


class BudgetExceeded(RuntimeError):
    """A random search used up its budget without a witness."""


class UnknownPredicate(ValueError):
    pass


# -- enumeration ---------------------------------------------------------------

def _opens_of_preorder(n: int, up: list[int]) -> SetFamily:
    return SetFamily(a for a in range(1 << n) if all(up[i] & ~a == 0 for i in range(n) if a >> i & 1))


@lru_cache(maxsize=None)
def all_topologies(n: int) -> tuple[FiniteTopology, ...]:
    """Every topology on ``n`` labelled points, sorted by family encoding.

    Finite topologies correspond one-to-one to preorders (``x <= y`` iff
    every open set holding ``x`` holds ``y``); the open sets are the
    up-closed sets. Each transitive relation is turned into its family.
    """
    if n > EXHAUSTIVE_ALL_MAX:
        raise ScaleRefused(f"all-topology enumeration is capped at n={EXHAUSTIVE_ALL_MAX}")
    universe = Universe.of_size(n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    found: dict[int, SetFamily] = {}
    for bits in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                up[i] |= 1 << j
        if any(up[j] & ~up[i] for i in range(n) for j in range(n) if up[i] >> j & 1):
            continue  # not transitive
        fam = _opens_of_preorder(n, up)
        found[fam.encoding()] = fam
    return tuple(FiniteTopology(universe, found[e]) for e in sorted(found))


def all_ideals(universe: Universe) -> list[Ideal]:
    """Every ideal, sorted by family encoding; on a finite set each is a powerset."""
    ideals = [Ideal.below(universe, top) for top in range(universe.full + 1)]
    return sorted(ideals, key=lambda i: i.members.encoding())


def scope_functions(topology: FiniteTopology) -> Iterator[tuple[int, ...]]:
    """Every scope function, lexicographic in the aura tuple."""
    choices = [topology.neighborhoods(x).members for x in range(topology.universe.n)]
    return itertools.product(*choices)


def _closed_under_union_intersection(seed: set[int]) -> SetFamily:
    fam = set(seed)
    while True:
        new = {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam}
        if new <= fam:
            return SetFamily(fam)
        fam |= new


@dataclass(frozen=True)
class SearchConfig:
    n: int
    mode: str = "exhaustive"
    seed: int = 0
    budget: int | None = None
    topology_source: str = "all"
    ideal_source: str = "all"
    fixed_topology: FiniteTopology | None = None
    fixed_ideal: Ideal | None = None
    canonicalize: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', not {self.mode!r}")
        if self.topology_source not in ("all", "discrete", "fixed"):
            raise ValueError(f"unknown topology source {self.topology_source!r}")
        if self.ideal_source not in ("all", "principal", "fixed"):
            raise ValueError(f"unknown ideal source {self.ideal_source!r}")
        if self.topology_source == "fixed" and self.fixed_topology is None:
            raise ValueError("topology_source='fixed' needs fixed_topology")
        if self.ideal_source == "fixed" and self.fixed_ideal is None:
            raise ValueError("ideal_source='fixed' needs fixed_ideal")
        if self.fixed_topology is not None and self.fixed_topology.universe.n != self.n:
            raise ValueError("fixed topology has the wrong number of points")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def universe(self) -> Universe:
        if self.fixed_topology is not None:
            return self.fixed_topology.universe
        if self.fixed_ideal is not None:
            return self.fixed_ideal.universe
        return Universe.of_size(self.n)

    @property
    def random_budget(self) -> int:
        return DEFAULT_BUDGET if self.budget is None else self.budget

    def check_scale(self) -> None:
        if self.n > MAX_N:
            raise ScaleRefused(f"n={self.n} is above the supported maximum of {MAX_N}")
        if self.mode != "exhaustive":
            return
        if self.topology_source == "all" and self.n > EXHAUSTIVE_ALL_MAX:
            raise ScaleRefused(
                f"exhaustive all-topology search is capped at n={EXHAUSTIVE_ALL_MAX}; "
                "use --topology discrete, a fixed topology, or random mode"
            )
        if self.n > EXHAUSTIVE_DISCRETE_MAX:
            raise ScaleRefused(f"exhaustive search is capped at n={EXHAUSTIVE_DISCRETE_MAX}")


def _topologies(config: SearchConfig) -> tuple[FiniteTopology, ...]:
    if config.topology_source == "fixed":
        return (config.fixed_topology,)
    if config.topology_source == "discrete":
        return (FiniteTopology.discrete(config.universe),)
    return all_topologies(config.n)


def _ideals(config: SearchConfig) -> list[Ideal]:
    # a finite ideal is the powerset of its union, i.e. principal, so the
    # "principal" source gives the same list as "all"
    if config.ideal_source == "fixed":
        return [config.fixed_ideal]
    return all_ideals(config.universe)


def _units(config: SearchConfig) -> list[tuple[FiniteTopology, Ideal]]:
    return [(t, i) for t in _topologies(config) for i in _ideals(config)]


def _unit_spaces(topology: FiniteTopology, ideal: Ideal) -> Iterator[IdealAuraSpace]:
    universe = topology.universe
    for aura in scope_functions(topology):
        yield IdealAuraSpace(universe, topology, ideal, ScopeFunction(universe, aura))


def canonical_form(space: IdealAuraSpace) -> IdealAuraSpace:
    """The relabeling of ``space`` with the smallest ordering key."""
    best = min(itertools.permutations(range(space.n)), key=lambda p: space.relabel(p).key())
    return space.relabel(best)


def is_canonical(space: IdealAuraSpace) -> bool:
    return space.key() == space.canonical_key()


def random_space(config: SearchConfig, rng: XorShift64Star) -> IdealAuraSpace:
    """Draw one space: topology, then ideal, then scope function."""
    universe = config.universe
    n, full = universe.n, universe.full
    if config.topology_source == "fixed":
        topology = config.fixed_topology
    elif config.topology_source == "discrete":
        topology = FiniteTopology.discrete(universe)
    else:
        k = 1 + rng.below(n + 1)
        subbasis = {rng.next() & full for _ in range(k)}
        topology = FiniteTopology(universe, _closed_under_union_intersection(subbasis | {0, full}))
    if config.ideal_source == "fixed":
        ideal = config.fixed_ideal
    else:
        top = 0
        for _ in range(rng.below(3)):
            top |= rng.next() & rng.next() & full
        ideal = Ideal.below(universe, top)
    aura = tuple(rng.choice(topology.neighborhoods(x).members) for x in range(n))
    return IdealAuraSpace(universe, topology, ideal, ScopeFunction(universe, aura))


def random_spaces(config: SearchConfig, start: int = 0, stop: int | None = None) -> Iterator[IdealAuraSpace]:
    stop = config.random_budget if stop is None else stop
    for i in range(start, stop):
        space = random_space(config, stream_for(config.seed, i))
        yield canonical_form(space) if config.canonicalize else space


def enumerate_spaces(config: SearchConfig) -> Iterator[IdealAuraSpace]:
    """Every space in scope, in enumeration order.

    Exhaustive mode with ``canonicalize`` keeps one space per relabeling
    class (the one with the smallest key); random mode with
    ``canonicalize`` relabels each draw and skips repeats.
    """
    config.check_scale()
    if config.mode == "random":
        seen: set = set()
        for space in random_spaces(config):
            if config.canonicalize:
                if space.key() in seen:
                    continue
                seen.add(space.key())
            yield space
        return
    count = 0
    for topology, ideal in _units(config):
        for space in _unit_spaces(topology, ideal):
            if config.canonicalize and not is_canonical(space):
                continue
            if config.budget is not None and count >= config.budget:
                return
            count += 1
            yield space


def count_spaces(config: SearchConfig) -> int:
    return sum(1 for _ in enumerate_spaces(config))


# -- predicates ----------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    """What a predicate found inside one space."""

    subsets: dict[str, int]
    metrics: dict[str, Any] = field(default_factory=dict)
    target: IdealAuraSpace | None = None
    table: tuple[int, ...] | None = None


# how a finding or its absence relates to the statement behind a predicate
VERDICTS = {
    "strictness": ("witness found", "no witness in scope"),
    "withdrawn": (
        "refutes statement / consistent with proof",
        "statement not refuted in scope",
    ),
    "refutes": ("refutes statement", "statement not refuted in scope"),
    "open": ("witness found", "no witness in scope (evidence, not proof)"),
    "instances": ("instance found", "no instance in scope"),
}


@dataclass(frozen=True)
class Predicate:
    id: str
    description: str
    kind: str
    scan: Callable[[IdealAuraSpace], Finding | None]
    check: Callable[[IdealAuraSpace, Finding], bool]

    def verdict(self, found: bool) -> str:
        yes, no = VERDICTS[self.kind]
        return yes if found else no


def _first(flags: np.ndarray) -> int | None:
    idx = np.flatnonzero(flags)
    return int(idx[0]) if len(idx) else None


def _first_set(space: IdealAuraSpace, flags: np.ndarray, name: str = "A", **metrics) -> Finding | None:
    a = _first(flags)
    return None if a is None else Finding({name: a}, dict(metrics))


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


def _scan_strict_star(space):
    t = tables(space)
    return _first_set(space, t.star != t.aura_local)


def _check_strict_star(space, f):
    a = f.subsets["A"]
    star, al = ops.local_star(space, a), ops.aura_local(space, a)
    return _subset(star, al) and star != al


def _scan_not_closed(space):
    t = tables(space)
    return _first_set(space, t.classical_closure[t.aura_local] != t.aura_local)


def _check_not_closed(space, f):
    al = ops.aura_local(space, f.subsets["A"])
    return space.topology.closure(al) != al


def _nonidempotent(k: int) -> Predicate:
    def scan(space):
        t = tables(space)
        a = _first(t.stabilized_at >= k)
        if a is None:
            return None
        return Finding({"A": a}, {"stabilized_at": int(t.stabilized_at[a])})

    def check(space, f):
        return ops.ia_closure_trace(space, f.subsets["A"]).stabilized_at >= k

    return Predicate(
        f"NONIDEMPOTENT_K({k})",
        f"a set whose iterated ideal-aura closure needs at least {k} steps to stabilize",
        "strictness",
        scan,
        check,
    )


def _family_gap(space, bigger: SetFamily, smaller: SetFamily) -> Finding | None:
    for g in bigger:
        if g not in smaller:
            return Finding({"G": g})
    return None


def _scan_tau_aura_strict(space):
    return _family_gap(space, gen_tausa(space).opens, gen_tau_aura(space).opens)


def _check_tau_aura_strict(space, f):
    g = f.subsets["G"]
    comp = space.full & ~g
    return ops.ia_closure_fixpoint(space, comp) == comp and ops.aura_interior(space, g) != g


def _scan_tausa_strict_star(space):
    return _family_gap(space, gen_tau_star(space).opens, gen_tausa(space).opens)


def _check_tausa_strict_star(space, f):
    comp = space.full & ~f.subsets["G"]
    return ops.star_closure(space, comp) == comp and ops.ia_closure_fixpoint(space, comp) != comp


def _scan_tausac_not_in_tau(space):
    if space.ideal.is_trivial():
        return None
    return _family_gap(space, gen_tausa_c(space).opens, space.topology.opens)


def _check_tausac_not_in_tau(space, f):
    g = f.subsets["G"]
    comp = space.full & ~g
    return not space.ideal.is_trivial() and ops.ia_closure(space, comp) == comp and g not in space.topology.opens


def _class_predicate(pid, description, kind, want, nontransitive=False) -> Predicate:
    """``want(classes)`` gives a boolean array over subsets."""

    def scan(space):
        if nontransitive and space.is_transitive():
            return None
        return _first_set(space, want(class_tables(space)))

    def check(space, f):
        if nontransitive and space.is_transitive():
            return False
        p = classify(space, f.subsets["A"]).as_dict()
        return bool(want({k: np.array([v]) for k, v in p.items()})[0])

    return Predicate(pid, description, kind, scan, check)


def _scan_vii_nontransitive(space):
    if space.is_transitive():
        return None
    al = tables(space).aura_local
    masks = tables(space).masks
    for j in space.ideal.members:
        a = _first(al[masks & ~j] != al)
        if a is not None:
            return Finding({"A": a, "J": j})
    return None


def _check_vii_nontransitive(space, f):
    a, j = f.subsets["A"], f.subsets["J"]
    return (
        not space.is_transitive()
        and j in space.ideal
        and ops.aura_local(space, a & ~j) != ops.aura_local(space, a)
    )


def _i_open(space) -> np.ndarray:
    t = tables(space)
    return (t.masks & ~t.classical_interior[t.star_closure]) == 0


def _i_open_scalar(space, a) -> bool:
    return _subset(a, space.topology.interior(ops.star_closure(space, a)))


def _scan_iopen_not_iaopen(space):
    return _first_set(space, _i_open(space) & ~class_tables(space)["ia_open"])


def _check_iopen_not_iaopen(space, f):
    a = f.subsets["A"]
    return _i_open_scalar(space, a) and not classify(space, a).ia_open


def _scan_iaopen_not_iopen(space):
    return _first_set(space, class_tables(space)["ia_open"] & ~_i_open(space))


def _check_iaopen_not_iopen(space, f):
    a = f.subsets["A"]
    return classify(space, a).ia_open and not _i_open_scalar(space, a)


def _scan_tausa_eq_tau_aura(space):
    if space.ideal.is_trivial():
        return None
    if gen_tausa(space).opens == gen_tau_aura(space).opens:
        return Finding({"ideal_top": space.ideal.top}, {"open_sets": len(gen_tausa(space).opens)})
    return None


def _check_tausa_eq_tau_aura(space, f):
    return not space.ideal.is_trivial() and gen_tausa(space).opens == gen_tau_aura(space).opens


# -- predicates over maps ----------------------------------------------------

def map_targets(space: IdealAuraSpace) -> list[IdealAuraSpace]:
    """Candidate codomains for map predicates, on the same point set.

    Each is a topology with the trivial ideal and every point's smallest
    neighbourhood as its aura; for such a space the Čech ideal-aura
    topology is the topology itself, so both continuity readings agree.
    All topologies are used up to three points; beyond that only the
    topologies derived from ``space`` and the two extremes.
    """
    u = space.universe
    if space.n <= 3:
        families = [t.opens for t in all_topologies(space.n)]
    else:
        fams = {
            f.encoding(): f
            for f in (
                space.topology.opens,
                gen_tau_aura(space).opens,
                gen_tausa(space).opens,
                gen_tau_star(space).opens,
                SetFamily(range(u.full + 1)),
                SetFamily({0, u.full}),
            )
        }
        families = [fams[e] for e in sorted(fams)]
    out = []
    for fam in families:
        top = FiniteTopology(u, fam)
        out.append(IdealAuraSpace(u, top, Ideal.trivial(u), ScopeFunction.minimal(top)))
    return out


def _membership(space: IdealAuraSpace, family: SetFamily) -> np.ndarray:
    out = np.zeros(1 << space.n, dtype=bool)
    out[family.as_array()] = True
    return out


def _map_scan(space: IdealAuraSpace, bad_maps: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]):
    """First (target, map) flagged by ``bad_maps``.

    ``bad_maps(cols)`` receives the preimage of every target open set under
    every map and returns (flag per map, flag per column marking the open
    set to report).
    """
    maps = all_tables(space.n, space.n)
    pre = preimage_matrix(maps, space.n)
    for target in map_targets(space):
        fam = target.topology.opens.as_array()
        cols = pre[:, fam]
        bad, mark = bad_maps(cols)
        i = _first(bad)
        if i is not None:
            v = int(fam[_first(mark[i])])
            return Finding({"V": v}, {}, target, tuple(int(y) for y in maps[i]))
    return None


def _scan_comparison_iii(space):
    star = _membership(space, gen_tau_star(space).opens)
    tau = _membership(space, space.topology.opens)

    def bad(cols):
        return star[cols].all(axis=1) & ~tau[cols].all(axis=1), ~tau[cols]

    return _map_scan(space, bad)


def _check_comparison_iii(space, f):
    fmap = SpaceMap(space, f.target, f.table)
    return not comparison_chain_check(fmap, reading="topology").probe["iii"]


def _scan_decomposition(space):
    if not space.is_transitive():
        return None
    c = class_tables(space)

    def bad(cols):
        cont = c["ia_open"][cols].all(axis=1)
        alpha = c["alpha"][cols].all(axis=1)
        semi_pre = c["semi"][cols].all(axis=1) & c["pre"][cols].all(axis=1)
        return (cont != alpha) | (cont != semi_pre), ~c["ia_open"][cols]

    found = _map_scan(space, bad)
    if found is not None:
        fmap = SpaceMap(space, found.target, found.table)
        report = decomposition_check(fmap, reading="topology")
        found.metrics["failed_clauses"] = report.failures
    return found


def _check_decomposition(space, f):
    fmap = SpaceMap(space, f.target, f.table)
    return space.is_transitive() and not decomposition_check(fmap, reading="topology").ok


def _build_registry() -> dict[str, Predicate]:
    preds = [
        Predicate("STRICT_STAR_AURA", "a set with A* strictly inside its aura-local set",
                  "strictness", _scan_strict_star, _check_strict_star),
        Predicate("AURA_LOCAL_NOT_CLOSED", "an aura-local set that is not closed",
                  "strictness", _scan_not_closed, _check_not_closed),
        Predicate("TAU_AURA_STRICT_TAUSA", "an ideal-aura open set that is not aura-open",
                  "strictness", _scan_tau_aura_strict, _check_tau_aura_strict),
        Predicate("TAUSA_STRICT_TAUSTAR", "a star-open set that is not ideal-aura open",
                  "strictness", _scan_tausa_strict_star, _check_tausa_strict_star),
        Predicate("TAUSAC_NOT_IN_TAU",
                  "nontrivial ideal and a Čech ideal-aura open set outside the base topology",
                  "withdrawn", _scan_tausac_not_in_tau, _check_tausac_not_in_tau),
        _class_predicate("SEMI_NOT_ALPHA", "a semi-open set that is not alpha-open", "strictness",
                         lambda c: c["semi"] & ~c["alpha"]),
        _class_predicate("PRE_NOT_ALPHA", "a pre-open set that is not alpha-open", "strictness",
                         lambda c: c["pre"] & ~c["alpha"]),
        _class_predicate("BETA_NOT_SEMI_NOT_PRE", "a beta-open set that is neither semi- nor pre-open",
                         "strictness", lambda c: c["beta"] & ~c["semi"] & ~c["pre"]),
        _class_predicate("SEMI_AND_PRE_NOT_ALPHA_NONTRANSITIVE",
                         "non-transitive scope and a set both semi- and pre-open but not alpha-open",
                         "open", lambda c: c["semi"] & c["pre"] & ~c["alpha"], nontransitive=True),
        Predicate("PROPERTY_VII_NONTRANSITIVE_FAIL",
                  "non-transitive scope with (A minus J)^a different from A^a for some J in the ideal",
                  "open", _scan_vii_nontransitive, _check_vii_nontransitive),
        Predicate("IOPEN_NOT_IAOPEN", "an I-open set that is not ideal-aura open",
                  "strictness", _scan_iopen_not_iaopen, _check_iopen_not_iaopen),
        Predicate("IAOPEN_NOT_IOPEN", "an ideal-aura open set that is not I-open",
                  "strictness", _scan_iaopen_not_iopen, _check_iaopen_not_iopen),
        Predicate("COMPARISON_III_FAIL",
                  "a map continuous for the star topology but not for the base topology",
                  "withdrawn", _scan_comparison_iii, _check_comparison_iii),
        Predicate("TAUSA_EQ_TAU_AURA",
                  "nontrivial ideal that adds no open sets to the aura topology",
                  "instances", _scan_tausa_eq_tau_aura, _check_tausa_eq_tau_aura),
        Predicate("DECOMPOSITION_FAIL",
                  "transitive scope and a map breaking open-continuous iff alpha-continuous "
                  "(or iff semi- and pre-continuous)",
                  "refutes", _scan_decomposition, _check_decomposition),
    ]
    return {p.id: p for p in preds}


PREDICATES = _build_registry()
_K_PATTERN = re.compile(r"NONIDEMPOTENT_K(?:\((\d+)\)|=?(\d+))?$")


def predicate_ids() -> list[str]:
    return sorted([*PREDICATES, "NONIDEMPOTENT_K(k)"])


def get_predicate(pid: str) -> Predicate:
    m = _K_PATTERN.match(pid)
    if m:
        k = int(m.group(1) or m.group(2) or 2)
        return _nonidempotent(k)
    try:
        return PREDICATES[pid]
    except KeyError:
        raise UnknownPredicate(
            f"unknown predicate {pid!r}; known: {', '.join(predicate_ids())}"
        ) from None


# -- witnesses -----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    predicate_id: str
    space: IdealAuraSpace
    subsets: dict[str, int]
    metrics: dict[str, Any] = field(default_factory=dict)
    target: IdealAuraSpace | None = None
    table: tuple[int, ...] | None = None

    @property
    def finding(self) -> Finding:
        return Finding(dict(self.subsets), dict(self.metrics), self.target, self.table)

    def to_obj(self) -> dict[str, Any]:
        u = self.space.universe
        block: dict[str, Any] = {
            "predicate": self.predicate_id,
            "subsets": {k: u.names_of(v) for k, v in self.subsets.items()},
            "metrics": self.metrics,
        }
        if self.target is not None:
            tu = self.target.universe
            block["map"] = {
                "target": space_to_obj(self.target),
                "table": {u.names[x]: tu.names[y] for x, y in enumerate(self.table)},
            }
        obj = space_to_obj(self.space)
        obj["witness"] = block
        return obj

    def dumps(self) -> str:
        return dumps_obj(self.to_obj())

    @classmethod
    def from_obj(cls, obj: dict[str, Any]) -> Witness:
        from .core import ParseError

        if not isinstance(obj, dict) or "witness" not in obj:
            raise ParseError("witness file needs a 'witness' block")
        block = obj["witness"]
        space = space_from_obj({k: v for k, v in obj.items() if k != "witness"})
        u = space.universe
        try:
            subsets = {k: u.mask(v) for k, v in block["subsets"].items()}
            target = table = None
            if "map" in block:
                target = space_from_obj(block["map"]["target"])
                tmap = block["map"]["table"]
                table = tuple(target.universe.index(tmap[x]) for x in u.names)
            return cls(block["predicate"], space, subsets, dict(block.get("metrics", {})), target, table)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed witness block: {exc!r}") from None


def verify_witness(witness: Witness) -> bool:
    """Re-check the finding from the witness alone."""
    return get_predicate(witness.predicate_id).check(witness.space, witness.finding)


@dataclass(frozen=True)
class NotFound:
    predicate_id: str
    reason: str
    spaces_checked: int
    verdict: str


# -- scanning ------------------------------------------------------------------

def _scan_units(config: SearchConfig, pid: str, lo: int, hi: int):
    """Scan exhaustive units ``lo:hi``; first hit as (position, payload), and a count."""
    pred = get_predicate(pid)
    units = _units(config)
    count = 0
    for ui in range(lo, hi):
        topology, ideal = units[ui]
        for j, space in enumerate(_unit_spaces(topology, ideal)):
            if config.canonicalize and not is_canonical(space):
                continue
            count += 1
            f = pred.scan(space)
            if f is not None:
                return (ui, j), _payload(space, f), count
    return None, None, count


def _scan_random(config: SearchConfig, pid: str, lo: int, hi: int):
    pred = get_predicate(pid)
    count = 0
    for i, space in enumerate(random_spaces(config, lo, hi), start=lo):
        count += 1
        f = pred.scan(space)
        if f is not None:
            return (i, 0), _payload(space, f), count
    return None, None, count


def _payload(space: IdealAuraSpace, f: Finding) -> dict[str, Any]:
    """Picklable, label-independent form of a finding."""
    return {
        "space": space_to_obj(space),
        "subsets": f.subsets,
        "metrics": f.metrics,
        "target": None if f.target is None else space_to_obj(f.target),
        "table": f.table,
    }


def _witness(pid: str, payload: dict[str, Any]) -> Witness:
    target = None if payload["target"] is None else space_from_obj(payload["target"])
    return Witness(pid, space_from_obj(payload["space"]), dict(payload["subsets"]),
                   dict(payload["metrics"]), target, payload["table"])


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts) if total else 1
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def find_witness(
    predicate_id: str,
    config: SearchConfig,
    jobs: int = 1,
    raise_on_budget: bool = False,
) -> Witness | NotFound:
    """First witness in enumeration order, or :class:`NotFound`.

    With ``jobs > 1`` the stream is cut into index ranges scanned in
    worker processes; the hit with the smallest position wins, so the
    answer does not depend on ``jobs``.
    """
    pred = get_predicate(predicate_id)
    pid = pred.id
    config.check_scale()
    if config.mode == "random":
        total, scan = config.random_budget, _scan_random
    else:
        total, scan = len(_units(config)), _scan_units

    if config.mode == "exhaustive" and config.budget is not None:
        # a budget on an exhaustive scan counts spaces, so scan in order
        checked = 0
        for space in enumerate_spaces(config):
            checked += 1
            f = pred.scan(space)
            if f is not None:
                return _accept(pid, _witness(pid, _payload(space, f)))
        return _not_found(pred, "budget" if checked >= config.budget else "exhausted", checked,
                          raise_on_budget and checked >= config.budget)

    ranges = _chunks(total, jobs * 4 if jobs > 1 else 1)
    if jobs > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(scan, *zip(*[(config, pid, lo, hi) for lo, hi in ranges])))
    else:
        results = [scan(config, pid, lo, hi) for lo, hi in ranges]
    checked = sum(r[2] for r in results)
    hits = [(pos, payload) for pos, payload, _ in results if pos is not None]
    if hits:
        _, payload = min(hits, key=lambda h: h[0])
        return _accept(pid, _witness(pid, payload))
    reason = "budget" if config.mode == "random" else "exhausted"
    return _not_found(pred, reason, checked, raise_on_budget and config.mode == "random")


def _accept(pid: str, witness: Witness) -> Witness:
    if not verify_witness(witness):  # pragma: no cover - would be an internal bug
        raise AssertionError(f"{pid}: scan and check disagree on {witness.to_obj()}")
    return witness


def _not_found(pred: Predicate, reason: str, checked: int, raise_budget: bool) -> NotFound:
    if raise_budget:
        raise BudgetExceeded(f"{pred.id}: no witness within a budget of {checked} spaces")
    return NotFound(pred.id, reason, checked, pred.verdict(False))


# -- stabilization census --------------------------------------------------------

@dataclass(frozen=True)
class Census:
    """Histogram of the largest stabilization index per space."""

    n: int
    spaces: int
    histogram: dict[int, int]
    transitive_histogram: dict[int, int]

    @property
    def max_index(self) -> int:
        return max(self.histogram, default=0)


def _census_part(config: SearchConfig, lo: int, hi: int) -> tuple[Counter, Counter]:
    hist: Counter = Counter()
    trans: Counter = Counter()
    if config.mode == "random":
        stream: Iterator[IdealAuraSpace] = random_spaces(config, lo, hi)
    else:
        units = _units(config)
        stream = (
            s for ui in range(lo, hi) for s in _unit_spaces(*units[ui])
            if not config.canonicalize or is_canonical(s)
        )
    for space in stream:
        k = int(tables(space).stabilized_at.max())
        assert k <= space.n, "stabilization index above the number of points"
        hist[k] += 1
        if space.is_transitive():
            trans[k] += 1
    return hist, trans


def stabilization_census(config: SearchConfig, jobs: int = 1) -> Census:
    config.check_scale()
    total = config.random_budget if config.mode == "random" else len(_units(config))
    ranges = _chunks(total, jobs * 4 if jobs > 1 else 1)
    if jobs > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_census_part, *zip(*[(config, lo, hi) for lo, hi in ranges])))
    else:
        parts = [_census_part(config, lo, hi) for lo, hi in ranges]
    hist: Counter = Counter()
    trans: Counter = Counter()
    for h, t in parts:
        hist += h
        trans += t
    return Census(config.n, sum(hist.values()), dict(sorted(hist.items())), dict(sorted(trans.items())))


__all__ = [
    "BudgetExceeded",
    "Census",
    "Finding",
    "NotFound",
    "PREDICATES",
    "Predicate",
    "ScaleRefused",
    "SearchConfig",
    "UnknownPredicate",
    "Witness",
    "all_ideals",
    "all_topologies",
    "canonical_form",
    "count_spaces",
    "enumerate_spaces",
    "find_witness",
    "get_predicate",
    "map_targets",
    "predicate_ids",
    "random_space",
    "random_spaces",
    "scope_functions",
    "stabilization_census",
    "verify_witness",
]
