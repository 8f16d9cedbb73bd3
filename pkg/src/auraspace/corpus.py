"""Worked-example corpus: fixture spaces with hand-computed expectations.

Each expectation is a value stated in a worked example, tagged with a short
``origin`` naming that example. A mismatch here is a regression.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from . import operators as ops
from .classifiers import classify
from .core import IdealAuraSpace, SetFamily, neighborhoods
from .io import load_fixture
from .topologies import gen_tau_aura, gen_tau_star, gen_tausa

STRICT = "strict-inclusion example (A* inside the aura-local set)"
NOT_CLOSED = "not-closed example"
NONIDEM = "non-idempotency proof"
CHAIN = "chain-strict example"
HIER = "hierarchy-strict example"


@dataclass(frozen=True)
class Expectation:
    fixture: str
    op: str
    arg: str
    expected: Any
    origin: str


E = Expectation
EXPECTATIONS: tuple[Expectation, ...] = (
    E("strict-inclusion", "aura_local", "{a}", "{a,b,c}", STRICT),
    E("strict-inclusion", "local_star", "{a}", "{a,c}", STRICT),
    E("strict-inclusion", "neighborhoods", "c", ["{a,b,c}"], STRICT),
    E("strict-inclusion", "star_closure", "{a}", "{a,c}", STRICT),
    E("not-closed", "aura_local", "{a}", "{a,b,c,d}", NOT_CLOSED),
    E("not-closed-prime", "aura_local", "{b}", "{b,c,d}", NOT_CLOSED + ", primed space"),
    E("not-closed-prime", "closed_sets", "", ["{}", "{d}", "{a,d}", "{b,c,d}", "{a,b,c,d}"],
      NOT_CLOSED + ", primed space"),
    E("not-closed-prime", "classical_closure", "{b}", "{b,c,d}", NOT_CLOSED + ", primed space"),
    E("nonidem3", "aura_local", "{c}", "{b,c}", NONIDEM + ", first 3-point space"),
    E("nonidem3", "ia_closure", "{c}", "{b,c}", NONIDEM + ", first 3-point space"),
    E("nonidem3", "aura_local", "{b,c}", "{b,c}", NONIDEM + ", first 3-point space"),
    E("nonidem3", "ia_closure", "{b,c}", "{b,c}", NONIDEM + ", first 3-point space"),
    E("nonidem3-prime", "aura_local", "{c}", "{}", NONIDEM + ", modified ideal"),
    E("nonidem3-prime", "ia_closure", "{c}", "{c}", NONIDEM + ", modified ideal"),
    E("nonidem4-blocked", "aura_local", "{d}", "{c,d}", NONIDEM + ", blocked 4-point chain"),
    E("nonidem4-blocked", "ia_closure", "{c,d}", "{c,d}", NONIDEM + ", blocked 4-point chain"),
    E("nonidem5-blocked", "ideal_members", "", ["{}", "{b}", "{d}", "{b,d}"], NONIDEM + ", 5-point chain"),
    E("nonidem5-blocked", "aura_local", "{e}", "{d,e}", NONIDEM + ", 5-point chain"),
    E("nonidem5-blocked", "aura_local", "{d,e}", "{d,e}", NONIDEM + ", 5-point chain"),
    E("nonidem5-blocked", "ia_closure", "{d,e}", "{d,e}", NONIDEM + ", 5-point chain"),
    E("nonidem4", "aura_local", "{d}", "{c,d}", NONIDEM + ", unblocked 4-point chain"),
    E("nonidem4", "ia_closure", "{d}", "{c,d}", NONIDEM + ", unblocked 4-point chain"),
    E("nonidem4", "aura_local", "{c,d}", "{b,c,d}", NONIDEM + ", unblocked 4-point chain"),
    E("nonidem4", "aura_local", "{b,c,d}", "{a,b,c,d}", NONIDEM + ", unblocked 4-point chain"),
    E("nonidem4", "trace", "{d}", (["{d}", "{c,d}", "{b,c,d}", "{a,b,c,d}"], 3),
      NONIDEM + ", unblocked 4-point chain"),
    E("chain-strict", "transitive", "", True, CHAIN),
    E("chain-strict", "tau_aura", "", ["{}", "{b}", "{c}", "{a,b}", "{b,c}", "{a,b,c}"], CHAIN),
    E("chain-strict", "tausa", "", ["{}", "{b}", "{c}", "{a,b}", "{b,c}", "{a,b,c}"], CHAIN),
    E("chain-strict", "aura_interior", "{a}", "{}", CHAIN),
    E("chain-strict", "aura_local", "{a,c}", "{a}", CHAIN),
    E("chain-strict", "aura_local", "{a,b}", "{a,b}", CHAIN),
    E("chain-strict", "aura_local", "{c}", "{}", CHAIN),
    E("chain-strict", "aura_local", "{a}", "{a}", CHAIN),
    E("chain-strict-v2", "tau_aura", "", ["{}", "{b}", "{c}", "{a,b}", "{b,c}", "{a,b,c}"], CHAIN + ", second variant"),
    E("chain-strict-v2", "aura_local", "{b,c}", "{c}", CHAIN + ", second variant"),
    E("chain-strict-v2", "in_tausa", "{a}", True, CHAIN + ", second variant"),
    E("chain-strict-v2", "in_tau_aura", "{a}", False, CHAIN + ", second variant"),
    E("chain-strict-v2", "local_star", "{b,c}", "{c}", CHAIN + ", second variant"),
    E("chain-strict-v2", "local_star", "{b}", "{}", CHAIN + ", second variant"),
    E("chain-strict-v2", "aura_local", "{b}", "{}", CHAIN + ", second variant"),
    E("chain-strict-v2", "in_tausa", "{a,c}", True, CHAIN + ", second variant"),
    E("chain-strict-v2", "tausa", "", "powerset", CHAIN + ", second variant"),
    E("chain-strict-v2", "tau_star", "", "powerset", CHAIN + ", second variant"),
    E("hier", "transitive", "", True, HIER),
    E("hier", "aura_local", "{a,c}", "{a,c}", HIER),
    E("hier", "ia_closure", "{a,c}", "{a,c}", HIER),
    E("hier", "ia_interior", "{a,c}", "{c}", HIER),
    E("hier", "ia_closure", "{c}", "{c}", HIER),
    E("hier", "semi", "{a,c}", False, HIER),
    E("hier", "pre", "{a,c}", False, HIER),
    E("hier", "beta", "{a,c}", False, HIER),
    E("hier", "ia_interior", "{b,c,d}", "{b,c,d}", HIER),
    E("hier", "ia_open", "{b,c,d}", True, HIER),
    E("hier", "ia_interior", "{a,b,d}", "{a,b,d}", HIER),
    E("hier", "ia_open", "{a,b,d}", True, HIER),
    E("hier", "ia_interior", "{a,d}", "{d}", HIER),
    E("hier", "ia_closure", "{a,d}", "{a,d}", HIER),
    E("hier", "ia_closure", "{d}", "{d}", HIER),
    E("hier", "semi", "{a,d}", False, HIER),
    E("hier", "pre", "{a,d}", False, HIER),
)

_SET_OPS: dict[str, Callable[[IdealAuraSpace, int], int]] = {
    "local_star": ops.local_star,
    "aura_local": ops.aura_local,
    "star_closure": ops.star_closure,
    "aura_closure": ops.aura_closure,
    "aura_interior": ops.aura_interior,
    "ia_closure": ops.ia_closure,
    "ia_interior": ops.ia_interior,
    "psi_aura": ops.psi_aura,
    "classical_closure": lambda s, a: s.topology.closure(a),
}
_FAMILY_OPS: dict[str, Callable[[IdealAuraSpace], SetFamily]] = {
    "tau_aura": lambda s: gen_tau_aura(s).opens,
    "tausa": lambda s: gen_tausa(s).opens,
    "tau_star": lambda s: gen_tau_star(s).opens,
    "closed_sets": lambda s: s.topology.closed_sets(),
    "ideal_members": lambda s: s.ideal.members,
}


def evaluate(space: IdealAuraSpace, op: str, arg: str) -> Any:
    """Compute ``op`` on ``space`` and render it the way expectations are written."""
    u = space.universe
    if op in _SET_OPS:
        return u.format_set(_SET_OPS[op](space, u.parse_set(arg)))
    if op in _FAMILY_OPS:
        fam = _FAMILY_OPS[op](space)
        if len(fam) == 1 << space.n:
            return "powerset"
        return [u.format_set(m) for m in fam]
    if op == "neighborhoods":
        return [u.format_set(m) for m in neighborhoods(space, arg)]
    if op == "trace":
        trace = ops.ia_closure_trace(space, u.parse_set(arg))
        return ([u.format_set(s) for s in trace.steps], trace.stabilized_at)
    if op == "transitive":
        return space.is_transitive()
    if op == "in_tausa":
        return u.parse_set(arg) in gen_tausa(space).opens
    if op == "in_tau_aura":
        return u.parse_set(arg) in gen_tau_aura(space).opens
    if op in ("ia_open", "semi", "pre", "alpha", "beta", "b_set"):
        return getattr(classify(space, u.parse_set(arg)), op)
    raise ValueError(f"unknown corpus operation {op!r}")


@dataclass(frozen=True)
class CorpusRow:
    expectation: Expectation
    got: Any

    @property
    def ok(self) -> bool:
        want, got = self.expectation.expected, self.got
        if isinstance(want, list) and isinstance(got, list):
            # families: member order is irrelevant
            return sorted(want) == sorted(got)
        return got == want


@dataclass(frozen=True)
class CorpusReport:
    rows: tuple[CorpusRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list[CorpusRow]:
        return [r for r in self.rows if not r.ok]


def run_paper_corpus(
    only: Iterable[str] | None = None,
    spaces: Mapping[str, IdealAuraSpace] | None = None,
    expectations: Iterable[Expectation] = EXPECTATIONS,
) -> CorpusReport:
    """Evaluate every expectation; ``spaces`` overrides packaged fixtures by name."""
    wanted = set(only) if only is not None else None
    loaded: dict[str, IdealAuraSpace] = dict(spaces or {})
    rows = []
    for e in expectations:
        if wanted is not None and e.fixture not in wanted:
            continue
        if e.fixture not in loaded:
            loaded[e.fixture] = load_fixture(e.fixture)
        rows.append(CorpusRow(e, evaluate(loaded[e.fixture], e.op, e.arg)))
    return CorpusReport(tuple(rows))
