"""Executable law suite: every theorem as a check quantified over spaces.

A law is *asserted* (it must hold on every space meeting its hypothesis)
or a *probe* (a statement that was withdrawn, is open, or only claimed in
passing; failures are reported as findings and never fail the suite).
Laws with a hypothesis are not evaluated on spaces that miss it; those
spaces are counted as skipped.

Space laws look at one space at a time, over all of its subsets. Map laws
look at every map between the spaces of the run that have at most
:data:`MAP_MAX_POINTS` points. Maps into target spaces with the same open
family behave identically, so targets are grouped by family first.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Sequence

import numpy as np

from .classifiers import aura_class_tables, class_tables
from .continuity import all_tables, preimage_matrix, sweep_profiles
from .core import (
    Ideal,
    IdealAuraSpace,
    ScopeFunction,
    SetFamily,
    points_of,
    subsets_of,
    topology_violations,
)
from .io import fixture_names, load_fixture, load_space, space_to_obj
from .operators import tables
from .rng import stream_for
from .search import SearchConfig, enumerate_spaces, random_space
from .topologies import (
    gen_basis_beta,
    gen_tau_aura,
    gen_tau_star,
    gen_tausa,
    gen_tausa_c,
    topology_from_basis,
)

MAP_MAX_POINTS = 3
KEEP_VIOLATIONS = 20


class UnknownLaw(KeyError):
    def __str__(self) -> str:
        return f"unknown law {self.args[0]!r}; known: {', '.join(law_ids())}"


# -- small vectorised helpers ------------------------------------------------------

Miss = tuple[str, dict[str, int]]  # (clause, named subsets)


def _within(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a & ~b) == 0


def _each(clause: str, bad: np.ndarray, name: str = "A") -> list[Miss]:
    return [(clause, {name: int(i)}) for i in np.flatnonzero(bad)]


def _each_pair(clause: str, bad: np.ndarray, names: tuple[str, str] = ("A", "B")) -> list[Miss]:
    return [(clause, {names[0]: int(i), names[1]: int(j)}) for i, j in np.argwhere(bad)]


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(``A`` within ``B`` matrix, ``A | B`` matrix) over all subset pairs."""
    m = np.arange(1 << n, dtype=np.int64)
    return _within(m[:, None], m[None, :]), m[:, None] | m[None, :]


def _monotone(clause: str, op: np.ndarray, n: int) -> list[Miss]:
    sub, _ = _pairs(n)
    return _each_pair(clause, sub & ~_within(op[:, None], op[None, :]))


def _additive(clause: str, op: np.ndarray, n: int) -> list[Miss]:
    _, union = _pairs(n)
    return _each_pair(clause, op[union] != (op[:, None] | op[None, :]))


def _meet_additive(clause: str, op: np.ndarray, n: int) -> list[Miss]:
    m = np.arange(1 << n, dtype=np.int64)
    return _each_pair(clause, op[m[:, None] & m[None, :]] != (op[:, None] & op[None, :]))


def _family_gaps(clause: str, small: SetFamily, big: SetFamily) -> list[Miss]:
    return [(clause, {"G": g}) for g in small if g not in big]


def _family_diff(clause: str, a: SetFamily, b: SetFamily) -> list[Miss]:
    return _family_gaps(clause, a, b) + _family_gaps(clause, b, a)


def _is_topology(clause: str, space: IdealAuraSpace, fam: SetFamily) -> list[Miss]:
    return [(clause, {}) for _ in topology_violations(space.universe, fam)]


def _aura_local_for(space: IdealAuraSpace, member: np.ndarray, aura: Sequence[int] | None = None) -> np.ndarray:
    """Aura-local table for an arbitrary ideal (membership array) and aura."""
    m = tables(space).masks
    out = np.zeros_like(m)
    for x, ax in enumerate(space.aura if aura is None else aura):
        out |= (~member[m & ax]).astype(np.int64) << x
    return out


def _variant(space: IdealAuraSpace, name: str) -> IdealAuraSpace:
    """The same space with the trivial ideal, the improper ideal, or every aura = X."""
    key = ("variant", name)
    if key not in space._cache:
        u = space.universe
        if name == "trivial":
            v = space if space.ideal.is_trivial() else space.with_ideal(Ideal.trivial(u))
        elif name == "improper":
            v = space if space.ideal.is_improper() else space.with_ideal(Ideal.improper(u))
        elif name == "whole":
            v = IdealAuraSpace(u, space.topology, space.ideal, ScopeFunction(u, (u.full,) * u.n))
        else:  # pragma: no cover
            raise ValueError(name)
        space._cache[key] = v
    return space._cache[key]


def _powerset(space: IdealAuraSpace) -> SetFamily:
    return SetFamily(range(space.full + 1))


# -- space laws ----------------------------------------------------------------------

def law_star_properties(space: IdealAuraSpace) -> list[Miss]:
    t, n = tables(space), space.n
    star = t.star
    out = _each("empty", star[:1] != 0)
    out += _monotone("monotone", star, n)
    out += _additive("additive", star, n)
    out += _each("closed", t.classical_closure[star] != star)
    out += _each("star_of_star", ~_within(star[star], star))
    out += _each("idempotent_closure", t.star_closure[t.star_closure] != t.star_closure)
    tau_star = gen_tau_star(space).opens
    out += _family_gaps("tau_within_tau_star", space.topology.opens, tau_star)
    psi_open = _within(t.masks, t.psi_star)
    out += _each("psi_characterizes_tau_star", psi_open != np.isin(t.masks, tau_star.as_array()))
    out += _each("psi_is_open", ~np.isin(t.psi_star, space.topology.opens.as_array()))
    return out


def law_aura_topology(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    fam = gen_tau_aura(space).opens
    direct = SetFamily(
        a for a in range(space.full + 1) if all(space.aura[x] & ~a == 0 for x in points_of(a))
    )
    out = _family_diff("definition", fam, direct)
    out += _is_topology("is_topology", space, fam)
    out += _family_gaps("within_tau", fam, space.topology.opens)
    comp = space.full ^ t.masks
    out += _each("closure_interior_duality", t.aura_closure != space.full ^ t.aura_interior[comp])
    return out


def law_star_subset_aura(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    return _each("inclusion", ~_within(t.star, t.aura_local))


def observe_star_subset_aura(space: IdealAuraSpace) -> dict[str, int] | None:
    t = tables(space)
    strict = np.flatnonzero(t.star != t.aura_local)
    return {"A": int(strict[0])} if len(strict) else None


def law_aura_local_properties(space: IdealAuraSpace) -> list[Miss]:
    """Properties (i)-(vi) and (viii); (vii) has its own law."""
    t, n = tables(space), space.n
    al = t.aura_local
    out = _each("i", al[:1] != 0)
    out += _monotone("ii", al, n)
    out += _additive("iii", al, n)
    out += _each("iv", ~_within(al, t.aura_closure))
    triv = tables(_variant(space, "trivial"))
    out += _each("v", triv.aura_local != triv.aura_closure)
    out += _each("vi", tables(_variant(space, "improper")).aura_local != 0)
    # (viii): a larger ideal gives a smaller aura-local set
    by_top = {top: _aura_local_for(space, Ideal.below(space.universe, top).membership)
              for top in range(space.full + 1)}
    for big in range(space.full + 1):
        for small in subsets_of(big):
            bad = ~_within(by_top[big], by_top[small])
            out += [("viii", {"A": int(a), "I1": big, "I2": small}) for a in np.flatnonzero(bad)]
    return out


def _property_vii(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    out = []
    for j in space.ideal.members:
        bad = t.aura_local[t.masks & ~j] != t.aura_local
        out += [("vii", {"A": int(a), "J": j}) for a in np.flatnonzero(bad)]
    return out


def law_aura_local_vs_closure(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    al, cla, m = t.aura_local, t.aura_closure, t.masks
    out = _each("i", ~_within(al, cla))
    out += _each("ii", _within(m, al) & ~_within(m | al, cla))
    member = space.ideal.membership
    cond = np.ones(len(m), dtype=bool)
    for ax in space.aura:
        inter = m & ax
        cond &= (inter == 0) | ~member[inter]
    out += _each("iii", (al == cla) != cond)
    return out


def law_cech_axioms(space: IdealAuraSpace) -> list[Miss]:
    t, n = tables(space), space.n
    cl = t.closure
    out = _each("grounded", cl[:1] != 0)
    out += _each("extensive", ~_within(t.masks, cl))
    out += _monotone("monotone", cl, n)
    out += _additive("additive", cl, n)
    return out


def law_kuratowski_iterated(space: IdealAuraSpace) -> list[Miss]:
    t, n = tables(space), space.n
    fix = t.fixpoint
    out = _each("grounded", fix[:1] != 0)
    out += _each("extensive", ~_within(t.masks, fix))
    out += _additive("additive", fix, n)
    out += _each("idempotent", fix[fix] != fix)
    out += _each("closure_fixed", t.closure[fix] != fix)
    out += _each("stabilization_bound", t.stabilized_at > n)
    it = t.masks.copy()
    for _ in range(n):
        it = t.closure[it]
    out += _each("n_steps_suffice", it != fix)
    return out


def law_topology_chain(space: IdealAuraSpace) -> list[Miss]:
    fams = [gen_tau_aura(space).opens, gen_tausa(space).opens,
            gen_tausa_c(space).opens, gen_tau_star(space).opens]
    names = ["tau_aura", "tausa", "tausa_c", "tau_star"]
    out: list[Miss] = []
    for name, fam in zip(names, fams):
        out += _is_topology(f"{name}_is_topology", space, fam)
    for (a, fa), (b, fb) in zip(zip(names, fams), zip(names[1:], fams[1:])):
        out += _family_gaps(f"{a}_within_{b}", fa, fb)
    return out


def law_fixpoint_equals_cech(space: IdealAuraSpace) -> list[Miss]:
    return _family_diff("equal", gen_tausa(space).opens, gen_tausa_c(space).opens)


def law_chain_special_cases(space: IdealAuraSpace) -> list[Miss]:
    triv = _variant(space, "trivial")
    tt = tables(triv)
    out = _each("i_aura_local", tt.aura_local != tt.aura_closure)
    out += _each("i_closure", tt.closure != tt.aura_closure)
    out += _family_diff("i_topology", gen_tausa(triv).opens, gen_tau_aura(triv).opens)
    imp = _variant(space, "improper")
    ti = tables(imp)
    out += _each("ii_aura_local", ti.aura_local != 0)
    out += _each("ii_identity", ti.closure != ti.masks)
    out += _family_diff("ii_discrete", gen_tausa(imp).opens, _powerset(space))
    whole = tables(_variant(space, "whole"))
    expected = np.where(space.ideal.membership, 0, space.full)
    out += _each("iii", whole.aura_local != expected)
    return out


def law_transitive_idempotent(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    out = _each("idempotent", t.closure[t.closure] != t.closure)
    out += _each("one_step", t.stabilized_at > 1)
    out += _family_diff("topologies_agree", gen_tausa(space).opens, gen_tausa_c(space).opens)
    return out


def law_psi_properties(space: IdealAuraSpace) -> list[Miss]:
    """Properties (i)-(vi) of psi; (vii) has its own law."""
    t, n, full = tables(space), space.n, space.full
    psi, m = t.psi, t.masks
    member = space.ideal.membership
    direct = np.zeros_like(m)
    for x, ax in enumerate(space.aura):
        direct |= member[ax & ~m].astype(np.int64) << x
    out = _each("definition", psi != direct)
    out += _each("i", psi[full:] != full)
    empty_psi = sum(1 << x for x, ax in enumerate(space.aura) if ax in space.ideal)
    out += _each("ii", psi[:1] != empty_psi)
    out += _monotone("iii", psi, n)
    out += _meet_additive("iv", psi, n)
    out += _each("v", ~_within(psi, t.psi_star))
    out += _each("vi", ~_within(psi, m | (direct & ~m)))
    return out


def _psi_vii(space: IdealAuraSpace) -> list[Miss]:
    psi, m = tables(space).psi, tables(space).masks
    out = []
    for j in space.ideal.members:
        out += [("vii", {"A": int(a), "J": j}) for a in np.flatnonzero(psi[m | j] != psi)]
    return out


def _psi_characterization(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    in_tausa = np.isin(t.masks, gen_tausa(space).opens.as_array())
    return _each("equivalence", in_tausa != _within(t.masks, t.psi))


def _basis(space: IdealAuraSpace) -> list[Miss]:
    beta = gen_basis_beta(space)
    tausa = gen_tausa(space).opens
    out = _family_gaps("basis_open", beta, tausa)
    out += _family_diff("generates", topology_from_basis(space.universe, beta).opens, tausa)
    return out


def law_open_hierarchy(space: IdealAuraSpace) -> list[Miss]:
    out: list[Miss] = []
    tausa_c = np.isin(tables(space).masks, gen_tausa_c(space).opens.as_array())
    tausa = np.isin(tables(space).masks, gen_tausa(space).opens.as_array())
    for closure in ("step", "fixpoint"):
        c = class_tables(space, closure)
        tag = "" if closure == "step" else "_fixpoint"
        out += _each("open_alpha" + tag, c["ia_open"] & ~c["alpha"])
        out += _each("alpha_semi" + tag, c["alpha"] & ~c["semi"])
        out += _each("alpha_pre" + tag, c["alpha"] & ~c["pre"])
        out += _each("semi_beta" + tag, c["semi"] & ~c["beta"])
        out += _each("pre_beta" + tag, c["pre"] & ~c["beta"])
        out += _each("open_b_set" + tag, c["ia_open"] & ~c["b_set"])
        out += _each("tausa_alpha" + tag, tausa & ~c["alpha"])
    out += _each("open_is_cech_open", class_tables(space)["ia_open"] != tausa_c)
    return out


def _semi_pre_alpha(space: IdealAuraSpace) -> list[Miss]:
    c = class_tables(space)
    return _each("semi_and_pre_alpha", c["semi"] & c["pre"] & ~c["alpha"])


def law_trivial_ideal(space: IdealAuraSpace) -> list[Miss]:
    triv = _variant(space, "trivial")
    t = tables(triv)
    out = _each("i", t.aura_local != t.aura_closure)
    out += _each("ii", t.closure != t.aura_closure)
    out += _family_diff("iii", gen_tausa(triv).opens, gen_tau_aura(triv).opens)
    mine, theirs = class_tables(triv), aura_class_tables(triv)
    for name in theirs:
        out += _each(f"iv_{name}", mine[name] != theirs[name])
    return out


def law_finite_ideal(space: IdealAuraSpace) -> list[Miss]:
    # on a finite set every subset is finite: the finite-set ideal is the powerset
    fin = _variant(space, "improper")
    out = _each("aura_local_empty", tables(fin).aura_local != 0)
    out += _family_diff("discrete", gen_tausa(fin).opens, _powerset(space))
    return out


def law_improper_ideal(space: IdealAuraSpace) -> list[Miss]:
    imp = _variant(space, "improper")
    t = tables(imp)
    out = _each("i", t.aura_local != 0)
    out += _each("ii", t.closure != t.masks)
    out += _family_diff("iii", gen_tausa(imp).opens, _powerset(space))
    return out


def law_reduction(space: IdealAuraSpace) -> list[Miss]:
    ia_open = class_tables(space)["ia_open"]
    out = [("aura_open_is_ia_open", {"A": a}) for a in gen_tau_aura(space).opens if not ia_open[a]]
    triv = _variant(space, "trivial")
    tau_aura = np.isin(tables(triv).masks, gen_tau_aura(triv).opens.as_array())
    out += _each("coincide_trivial", class_tables(triv)["ia_open"] != tau_aura)
    return out


def law_interior_duality(space: IdealAuraSpace) -> list[Miss]:
    t, full = tables(space), space.full
    m = t.masks
    comp = full ^ m
    member = space.ideal.membership
    direct = np.zeros_like(m)
    for x, ax in enumerate(space.aura):
        direct |= (((m >> x) & 1).astype(bool) & member[ax & ~m]).astype(np.int64) << x
    out = _each("complement", t.interior != full ^ t.closure[comp])
    out += _each("psi", t.interior != m & t.psi)
    out += _each("pointwise", t.interior != direct)
    out += _each("fixpoint_complement", t.fixpoint_interior != full ^ t.fixpoint[comp])
    return out


def _tausa_c_within_tau(space: IdealAuraSpace) -> list[Miss]:
    return _family_gaps("tausa_c_within_tau", gen_tausa_c(space).opens, space.topology.opens)


def _i_open(space: IdealAuraSpace) -> np.ndarray:
    t = tables(space)
    return _within(t.masks, t.classical_interior[t.star_closure])


def _compat(space: IdealAuraSpace) -> list[Miss]:
    i_open, ia_open = _i_open(space), class_tables(space)["ia_open"]
    return _each("i_open_implies_ia_open", i_open & ~ia_open) + _each(
        "ia_open_implies_i_open", ia_open & ~i_open
    )


def _idempotent_transitive(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    idem = bool((t.closure[t.closure] == t.closure).all())
    return [("transitive", {})] if idem and not space.is_transitive() else []


def _aura_local_closed(space: IdealAuraSpace) -> list[Miss]:
    t = tables(space)
    return _each("closed", t.classical_closure[t.aura_local] != t.aura_local)


def _ideal_adds_open_sets(space: IdealAuraSpace) -> list[Miss]:
    same = gen_tausa(space).opens == gen_tau_aura(space).opens
    return [("adds_open_sets", {"I": space.ideal.top})] if same else []


# -- map laws ----------------------------------------------------------------------

@dataclass
class _TargetGroup:
    family: SetFamily
    count: int
    example: IdealAuraSpace


def _group_targets(spaces: Iterable[IdealAuraSpace]) -> dict[tuple[int, str], list[_TargetGroup]]:
    groups: dict[tuple[int, str], dict[int, _TargetGroup]] = {}
    for y in spaces:
        for reading, fam in (("topology", y.topology.opens), ("cech", gen_tausa_c(y).opens)):
            slot = groups.setdefault((y.n, reading), {})
            enc = fam.encoding()
            if enc in slot:
                slot[enc].count += 1
            else:
                slot[enc] = _TargetGroup(fam, 1, y)
    return {k: [v[e] for e in sorted(v)] for k, v in groups.items()}


MapMiss = tuple[str, int, IdealAuraSpace, tuple[int, ...]]  # clause, multiplicity, target, table


def _map_law_misses(law_id: str, source: IdealAuraSpace, groups) -> tuple[int, list[MapMiss]]:
    """Maps checked and violations for one source against every target group."""
    checked = 0
    out: list[MapMiss] = []
    members = None
    if law_id == "comparison_chain" or law_id == "comparison_iii":
        def member(fam: SetFamily) -> np.ndarray:
            arr = np.zeros(1 << source.n, dtype=bool)
            arr[fam.as_array()] = True
            return arr
        members = {
            "tau_aura": member(gen_tau_aura(source).opens),
            "tausa": member(gen_tausa(source).opens),
            "tau_star": member(gen_tau_star(source).opens),
            "tau": member(source.topology.opens),
        }
    for (ny, reading), glist in sorted(groups.items()):
        maps = all_tables(source.n, ny)
        pre = preimage_matrix(maps, ny)
        for g in glist:
            checked += len(maps) * g.count
            if members is not None:
                cols = pre[:, g.family.as_array()]
                cont = {k: v[cols].all(axis=1) for k, v in members.items()}
                if law_id == "comparison_chain":
                    clauses = {
                        "i": cont["tau_aura"] & ~cont["tausa"],
                        "ii": cont["tausa"] & ~cont["tau_star"],
                    }
                else:
                    clauses = {"iii": cont["tau_star"] & ~cont["tau"]}
            else:
                p = sweep_profiles(source, g.family, pre)
                if law_id == "continuity_hierarchy":
                    clauses = {
                        "continuous_alpha": p["continuous"] & ~p["alpha"],
                        "alpha_semi": p["alpha"] & ~p["semi"],
                        "alpha_pre": p["alpha"] & ~p["pre"],
                        "semi_beta": p["semi"] & ~p["beta"],
                        "pre_beta": p["pre"] & ~p["beta"],
                    }
                else:
                    clauses = {
                        "i": p["continuous"] != (p["semi"] & p["pre"]),
                        "ii": p["continuous"] != p["alpha"],
                    }
            for clause, bad in clauses.items():
                for i in np.flatnonzero(bad):
                    out.append((f"{clause}/{reading}", g.count, g.example, tuple(int(y) for y in maps[i])))
    return checked, out


# -- registry --------------------------------------------------------------------------

def _transitive(space: IdealAuraSpace) -> bool:
    return space.is_transitive()


def _not_transitive(space: IdealAuraSpace) -> bool:
    return not space.is_transitive()


def _nontrivial_ideal(space: IdealAuraSpace) -> bool:
    return not space.ideal.is_trivial()


PROBE_TEXT = {
    # (text when the statement fails somewhere, text when it never fails)
    "withdrawn": ("refutes statement / consistent with proof", "statement not refuted in scope"),
    "open": ("statement fails: counterexample found", "no counterexample in scope (evidence, not proof)"),
    "need_not": ("instances found, as claimed", "no instance in scope"),
    "claim": ("claim fails: counterexample found", "claim holds in scope (evidence, not proof)"),
}


@dataclass(frozen=True)
class Law:
    id: str
    kind: str  # "asserted" or "probe"
    statement: str
    check: Callable[[IdealAuraSpace], list[Miss]] | None = None
    hypothesis: str | None = None
    applies: Callable[[IdealAuraSpace], bool] | None = None
    maps: bool = False
    probe_text: str | None = None
    observe: Callable[[IdealAuraSpace], dict[str, int] | None] | None = None


LAWS: dict[str, Law] = {
    law.id: law
    for law in [
        Law("star_properties", "asserted",
            "the local function is grounded, monotone, additive, closed; cl* is Kuratowski; "
            "tau within tau*; psi characterizes tau*", law_star_properties),
        Law("aura_topology", "asserted",
            "aura-open sets form a topology inside tau; aura closure and interior are dual",
            law_aura_topology),
        Law("star_subset_aura", "asserted", "A* is contained in A^a", law_star_subset_aura,
            observe=observe_star_subset_aura),
        Law("aura_local_properties", "asserted",
            "aura-local function properties (i)-(vi) and (viii)", law_aura_local_properties),
        Law("aura_local_vii", "asserted", "(A minus J)^a = A^a for J in the ideal",
            _property_vii, hypothesis="transitive", applies=_transitive),
        Law("aura_local_vs_closure", "asserted",
            "A^a within the aura closure, and when the two are equal", law_aura_local_vs_closure),
        Law("cech_axioms", "asserted", "the ideal-aura closure is an additive Čech closure",
            law_cech_axioms),
        Law("kuratowski_iterated", "asserted",
            "the iterated closure is Kuratowski and stabilizes within n steps", law_kuratowski_iterated),
        Law("topology_chain", "asserted", "tau_aura within tausa within tausa_c within tau*",
            law_topology_chain),
        Law("fixpoint_equals_cech", "asserted",
            "the fixpoint and single-step ideal-aura topologies coincide", law_fixpoint_equals_cech),
        Law("chain_special_cases", "asserted",
            "trivial ideal, improper ideal and whole-space auras", law_chain_special_cases),
        Law("transitive_idempotent", "asserted",
            "a transitive scope makes the closure idempotent", law_transitive_idempotent,
            hypothesis="transitive", applies=_transitive),
        Law("psi_properties", "asserted", "psi_aura properties (i)-(vi)", law_psi_properties),
        Law("psi_vii", "asserted", "psi(A) = psi(A with J) for J in the ideal", _psi_vii,
            hypothesis="transitive", applies=_transitive),
        Law("psi_characterization", "asserted", "A in tausa iff A within psi(A)",
            _psi_characterization, hypothesis="transitive", applies=_transitive),
        Law("basis_theorem", "asserted", "auras minus ideal members form a basis of tausa",
            _basis, hypothesis="transitive", applies=_transitive),
        Law("open_hierarchy", "asserted",
            "open => alpha => semi, pre => beta; open sets are B-sets; open iff Čech-open",
            law_open_hierarchy),
        Law("semi_pre_alpha", "asserted", "semi-open and pre-open implies alpha-open",
            _semi_pre_alpha, hypothesis="transitive", applies=_transitive),
        Law("trivial_ideal", "asserted", "with the trivial ideal everything reduces to the aura case",
            law_trivial_ideal),
        Law("finite_ideal", "asserted", "the finite-set ideal on a finite space", law_finite_ideal),
        Law("improper_ideal", "asserted", "with the improper ideal the closure is the identity",
            law_improper_ideal),
        Law("reduction", "asserted", "aura-open implies ideal-aura open; equal for the trivial ideal",
            law_reduction),
        Law("interior_duality", "asserted", "int = X minus cl of the complement = A meet psi(A)",
            law_interior_duality),
        Law("continuity_hierarchy", "asserted",
            "continuous => alpha => semi, pre => beta, for maps", maps=True),
        Law("decomposition", "asserted",
            "open-continuous iff semi- and pre-continuous iff alpha-continuous",
            hypothesis="transitive", applies=_transitive, maps=True),
        Law("comparison_chain", "asserted",
            "aura-continuous => ideal-aura-continuous => star-continuous", maps=True),
        # probes
        Law("chain_tau_containment", "probe", "tausa_c within tau when the ideal is nontrivial",
            _tausa_c_within_tau, hypothesis="nontrivial ideal", applies=_nontrivial_ideal,
            probe_text="withdrawn"),
        Law("comparison_iii", "probe", "star-continuous implies continuous", maps=True,
            probe_text="withdrawn"),
        Law("aura_local_vii_nontransitive", "probe", "property (vii) without transitivity",
            _property_vii, hypothesis="non-transitive", applies=_not_transitive, probe_text="open"),
        Law("psi_vii_nontransitive", "probe", "psi property (vii) without transitivity", _psi_vii,
            hypothesis="non-transitive", applies=_not_transitive, probe_text="open"),
        Law("psi_characterization_nontransitive", "probe", "psi characterization without transitivity",
            _psi_characterization, hypothesis="non-transitive", applies=_not_transitive,
            probe_text="open"),
        Law("basis_theorem_nontransitive", "probe", "basis theorem without transitivity", _basis,
            hypothesis="non-transitive", applies=_not_transitive, probe_text="open"),
        Law("semi_pre_alpha_nontransitive", "probe", "semi and pre implies alpha without transitivity",
            _semi_pre_alpha, hypothesis="non-transitive", applies=_not_transitive, probe_text="open"),
        Law("compat_i_open", "probe", "I-open and ideal-aura open imply each other", _compat,
            probe_text="need_not"),
        Law("idempotent_implies_transitive", "probe", "an idempotent closure has a transitive scope",
            _idempotent_transitive, probe_text="claim"),
        Law("aura_local_not_closed", "probe", "A^a is always closed", _aura_local_closed,
            probe_text="need_not"),
        Law("ideal_adds_open_sets", "probe", "a nontrivial ideal adds open sets to tau_aura",
            _ideal_adds_open_sets, hypothesis="nontrivial ideal", applies=_nontrivial_ideal,
            probe_text="claim"),
    ]
}

# every law grouped by the result it encodes; the test-suite checks this
# table and the registry against each other
TOPICS: dict[str, tuple[str, ...]] = {
    "local function background": ("star_properties",),
    "aura spaces": ("aura_topology",),
    "local function inside aura-local function": ("star_subset_aura",),
    "aura-local function properties": ("aura_local_properties", "aura_local_vii",
                                       "aura_local_vii_nontransitive"),
    "aura-local function and aura closure": ("aura_local_vs_closure", "aura_local_not_closed"),
    "Čech closure": ("cech_axioms",),
    "iterated closure": ("kuratowski_iterated", "fixpoint_equals_cech"),
    "topology chain": ("topology_chain", "chain_tau_containment"),
    "chain special cases": ("chain_special_cases",),
    "transitivity and idempotency": ("transitive_idempotent", "idempotent_implies_transitive"),
    "psi operator": ("psi_properties", "psi_vii", "psi_vii_nontransitive"),
    "psi characterization": ("psi_characterization", "psi_characterization_nontransitive"),
    "basis": ("basis_theorem", "basis_theorem_nontransitive"),
    "generalized open hierarchy": ("open_hierarchy", "semi_pre_alpha", "semi_pre_alpha_nontransitive"),
    "continuity hierarchy": ("continuity_hierarchy",),
    "decomposition of continuity": ("decomposition",),
    "comparison of continuities": ("comparison_chain", "comparison_iii"),
    "trivial ideal": ("trivial_ideal",),
    "finite ideal": ("finite_ideal",),
    "improper ideal": ("improper_ideal",),
    "I-open versus ideal-aura open": ("compat_i_open",),
    "reduction diagram": ("reduction",),
    "ideal-aura interior": ("interior_duality",),
    "when the ideal adds nothing": ("ideal_adds_open_sets",),
}


def law_ids() -> list[str]:
    return list(LAWS)


def get_law(law_id: str) -> Law:
    try:
        return LAWS[law_id]
    except KeyError:
        raise UnknownLaw(law_id) from None


# -- reports ----------------------------------------------------------------------------

@dataclass
class LawViolation:
    space: IdealAuraSpace
    clause: str
    subsets: dict[str, int] = field(default_factory=dict)
    target: IdealAuraSpace | None = None
    table: tuple[int, ...] | None = None

    def to_obj(self) -> dict[str, Any]:
        u = self.space.universe
        obj: dict[str, Any] = {
            "clause": self.clause,
            "space": space_to_obj(self.space),
            "subsets": {k: u.names_of(v) for k, v in self.subsets.items()},
        }
        if self.target is not None:
            obj["target"] = space_to_obj(self.target)
            obj["map"] = {u.names[x]: self.target.universe.names[y] for x, y in enumerate(self.table)}
        return obj

    def describe(self) -> str:
        u = self.space.universe
        subs = ", ".join(f"{k}={u.format_set(v)}" for k, v in self.subsets.items())
        text = f"[{self.clause}] {subs}".rstrip()
        if self.table is not None:
            tu = self.target.universe
            text += " map " + ",".join(f"{u.names[x]}->{tu.names[y]}" for x, y in enumerate(self.table))
        return text


@dataclass
class LawReport:
    law_id: str
    kind: str
    spaces_checked: int = 0
    spaces_skipped: int = 0
    maps_checked: int = 0
    violation_count: int = 0
    violations: list[LawViolation] = field(default_factory=list)
    observation: LawViolation | None = None

    @property
    def status(self) -> str:
        if self.kind == "probe":
            return "probe-only"
        return "fail" if self.violation_count else "pass"

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    @property
    def verdict(self) -> str:
        law = get_law(self.law_id)
        if law.kind != "probe":
            return self.status
        found, none = PROBE_TEXT[law.probe_text]
        return found if self.violation_count else none

    def add(self, v: LawViolation, weight: int = 1) -> None:
        self.violation_count += weight
        if len(self.violations) < KEEP_VIOLATIONS:
            self.violations.append(v)

    def merge(self, other: LawReport) -> None:
        self.spaces_checked += other.spaces_checked
        self.spaces_skipped += other.spaces_skipped
        self.maps_checked += other.maps_checked
        self.violation_count += other.violation_count
        room = KEEP_VIOLATIONS - len(self.violations)
        self.violations += other.violations[:max(room, 0)]
        if self.observation is None:
            self.observation = other.observation

    def summary(self) -> str:
        scope = f"{self.spaces_checked} spaces"
        if self.maps_checked:
            scope += f", {self.maps_checked} maps"
        if self.spaces_skipped:
            scope += f", {self.spaces_skipped} skipped ({get_law(self.law_id).hypothesis} fails)"
        return f"{self.law_id}: {self.verdict} ({scope}; {self.violation_count} violations)"

    def to_obj(self) -> dict[str, Any]:
        obj = {
            "law": self.law_id,
            "kind": self.kind,
            "status": self.status,
            "verdict": self.verdict,
            "spaces_checked": self.spaces_checked,
            "spaces_skipped": self.spaces_skipped,
            "maps_checked": self.maps_checked,
            "violation_count": self.violation_count,
            "violations": [v.to_obj() for v in self.violations],
        }
        if self.observation is not None:
            obj["observation"] = self.observation.to_obj()
        return obj


# -- space sources ------------------------------------------------------------------

_RANGE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


def _size_range(text: str, default_lo: int) -> tuple[int, int]:
    m = _RANGE.match(text)
    if not m:
        raise ValueError(f"bad size {text!r}; expected K or J..K")
    if m.group(2) is None:
        return default_lo, int(m.group(1))
    return int(m.group(1)), int(m.group(2))


def _options(body: str) -> dict[str, str]:
    out = {}
    for part in filter(None, body.split(",")):
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        out[key.strip()] = value.strip()
    return out


def iter_source(source: str, seed: int = 0) -> Iterator[IdealAuraSpace]:
    """Spaces named by a source string.

    ``enum:n=K`` (all spaces with 1..K points, or ``n=J..K``),
    ``random:n=J..K,count=C`` (seeded), ``fixtures``, ``fixture:NAME``,
    or the path of a space file.
    """
    kind, _, body = source.partition(":")
    if kind == "enum" and body:
        lo, hi = _size_range(_options(body).get("n", "3"), 1)
        for n in range(lo, hi + 1):
            yield from enumerate_spaces(SearchConfig(n))
    elif kind == "random" and body:
        opts = _options(body)
        lo, hi = _size_range(opts.get("n", "4..5"), -1)
        if lo < 0:
            lo = hi
        count = int(opts.get("count", "1000"))
        for i in range(count):
            rng = stream_for(seed, i)
            n = lo + rng.below(hi - lo + 1)
            yield random_space(SearchConfig(n, mode="random"), rng)
    elif source == "fixtures":
        for name in fixture_names():
            yield load_fixture(name)
    elif kind == "fixture" and body:
        yield load_fixture(body)
    else:
        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"no such space source: {source}")
        yield load_space(path)


def iter_sources(sources: Iterable[str], seed: int = 0) -> Iterator[IdealAuraSpace]:
    for s in sources:
        yield from iter_source(s, seed)


# -- running ------------------------------------------------------------------------

def _space_pass(laws: Sequence[Law], spaces: Iterable[IdealAuraSpace]) -> dict[str, LawReport]:
    reports = {law.id: LawReport(law.id, law.kind) for law in laws}
    for space in spaces:
        for law in laws:
            rep = reports[law.id]
            if law.applies is not None and not law.applies(space):
                rep.spaces_skipped += 1
                continue
            rep.spaces_checked += 1
            for clause, subsets in law.check(space):
                rep.add(LawViolation(space, clause, subsets))
            if law.observe is not None and rep.observation is None:
                seen = law.observe(space)
                if seen is not None:
                    rep.observation = LawViolation(space, "observed", seen)
    return reports


def _map_pass(laws: Sequence[Law], sources: Sequence[IdealAuraSpace], targets: Sequence[IdealAuraSpace]):
    groups = _group_targets(targets)
    reports = {law.id: LawReport(law.id, law.kind) for law in laws}
    for source in sources:
        for law in laws:
            rep = reports[law.id]
            if law.applies is not None and not law.applies(source):
                rep.spaces_skipped += 1
                continue
            rep.spaces_checked += 1
            checked, misses = _map_law_misses(law.id, source, groups)
            rep.maps_checked += checked
            for clause, weight, target, table in misses:
                rep.add(LawViolation(source, clause, {}, target, table), weight)
    return reports


def _space_chunk(law_ids_: Sequence[str], spaces: Sequence[IdealAuraSpace]):
    return _space_pass([LAWS[i] for i in law_ids_], spaces)


def _map_chunk(law_ids_: Sequence[str], sources, targets):
    return _map_pass([LAWS[i] for i in law_ids_], sources, targets)


def _merge(into: dict[str, LawReport], part: dict[str, LawReport]) -> None:
    for k, rep in part.items():
        into[k].merge(rep)


def _chunked(items: list, parts: int) -> list[list]:
    step = max(1, -(-len(items) // parts))
    return [items[i:i + step] for i in range(0, len(items), step)]


def run_laws(
    law_ids_: Iterable[str],
    spaces: Iterable[IdealAuraSpace],
    jobs: int = 1,
) -> list[LawReport]:
    """Run several laws over one stream of spaces; reports in registry order.

    Map laws use every space of the stream with at most
    :data:`MAP_MAX_POINTS` points, both as source and as target.
    """
    wanted = [get_law(i) for i in law_ids_]
    order = [law.id for law in LAWS.values() if law in wanted]
    space_laws = [law for law in LAWS.values() if law in wanted and not law.maps]
    map_laws = [law for law in LAWS.values() if law in wanted and law.maps]
    reports = {law_id: LawReport(law_id, LAWS[law_id].kind) for law_id in order}

    small: list[IdealAuraSpace] = []

    def keep_small(stream):
        for s in stream:
            if map_laws and s.n <= MAP_MAX_POINTS:
                small.append(s)
            yield s

    stream = keep_small(spaces)
    ids = [law.id for law in space_laws]
    if jobs > 1:
        items = list(stream)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_space_chunk, [ids] * (jobs * 4), _chunked(items, jobs * 4)):
                _merge(reports, part)
    else:
        _merge(reports, _space_pass(space_laws, stream))

    if map_laws:
        mids = [law.id for law in map_laws]
        if jobs > 1 and len(small) > 1:
            chunks = _chunked(small, jobs * 4)
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(_map_chunk, [mids] * len(chunks), chunks, [small] * len(chunks)):
                    _merge(reports, part)
        else:
            _merge(reports, _map_pass(map_laws, small, small))
    return [reports[i] for i in order]


def run_law(law_id: str, space_source: str | Iterable[IdealAuraSpace], seed: int = 0, jobs: int = 1) -> LawReport:
    """One law over a source string (see :func:`iter_source`) or explicit spaces."""
    get_law(law_id)
    spaces = iter_source(space_source, seed) if isinstance(space_source, str) else space_source
    return run_laws([law_id], spaces, jobs)[0]


def run_all(
    space_source: str | Iterable[IdealAuraSpace], seed: int = 0, jobs: int = 1, probes: bool = True
) -> list[LawReport]:
    ids = [law.id for law in LAWS.values() if probes or law.kind == "asserted"]
    spaces = iter_source(space_source, seed) if isinstance(space_source, str) else space_source
    return run_laws(ids, spaces, jobs)


def suite_ok(reports: Iterable[LawReport]) -> bool:
    return all(r.ok for r in reports)


__all__ = [
    "LAWS",
    "Law",
    "LawReport",
    "LawViolation",
    "MAP_MAX_POINTS",
    "TOPICS",
    "UnknownLaw",
    "get_law",
    "iter_source",
    "iter_sources",
    "law_ids",
    "run_all",
    "run_law",
    "run_laws",
    "suite_ok",
]
