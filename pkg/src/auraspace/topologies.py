"""The four topologies of the inclusion chain, and the aura basis.

All generators test every subset of the universe for membership, so they
are exact and cost ``O(2^n)`` table lookups per space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    FiniteTopology,
    IdealAuraSpace,
    SetFamily,
    SpaceError,
    Universe,
    Violation,
    validate_topology,
)
from .operators import tables

GENERATORS = ("tau_aura", "tau_star", "tausa", "tausa_c", "beta")


class NotACover(SpaceError):
    pass


def _family(mask_array: np.ndarray) -> SetFamily:
    return SetFamily(int(m) for m in np.flatnonzero(mask_array))


def _cached(space: IdealAuraSpace, key: str, build):
    if key not in space._cache:
        space._cache[key] = build()
    return space._cache[key]


def gen_tau_aura(space: IdealAuraSpace) -> FiniteTopology:
    """Sets containing the aura of each of their points."""
    def build():
        t = tables(space)
        top = validate_topology(space.universe, _family(t.aura_interior == t.masks))
        assert top.opens <= space.topology.opens, "aura topology escaped the base topology"
        return top
    return _cached(space, "tau_aura", build)


def _complement_fixed(space: IdealAuraSpace, closure: np.ndarray) -> SetFamily:
    t = tables(space)
    comp = space.full ^ t.masks
    return _family(closure[comp] == comp)


def gen_tau_star(space: IdealAuraSpace) -> FiniteTopology:
    def build():
        top = validate_topology(space.universe, _complement_fixed(space, tables(space).star_closure))
        assert space.topology.opens <= top.opens
        return top
    return _cached(space, "tau_star", build)


def gen_tausa(space: IdealAuraSpace) -> FiniteTopology:
    """Open sets of the iterated (fixpoint) ideal-aura closure."""
    def build():
        top = validate_topology(space.universe, _complement_fixed(space, tables(space).fixpoint))
        assert top.opens <= gen_tausa_c(space).opens
        return top
    return _cached(space, "tausa", build)


def gen_tausa_c(space: IdealAuraSpace) -> FiniteTopology:
    """Open sets of the single-step ideal-aura closure."""
    def build():
        return validate_topology(space.universe, _complement_fixed(space, tables(space).closure))
    return _cached(space, "tausa_c", build)


def gen_basis_beta(space: IdealAuraSpace) -> SetFamily:
    """Every aura minus an ideal member."""
    return SetFamily(a & ~j for a in space.aura for j in space.ideal.members)


def topology_from_basis(universe: Universe, basis: SetFamily) -> FiniteTopology:
    """All unions of subfamilies of ``basis``; the basis must cover the universe."""
    cover = 0
    for b in basis:
        cover |= b
    if cover != universe.full:
        raise NotACover([Violation("NotACover", (cover,))], universe)
    opens = {0}
    for b in basis:
        opens |= {o | b for o in opens}
    return FiniteTopology(universe, SetFamily(opens))


def generate(space: IdealAuraSpace, name: str) -> FiniteTopology | SetFamily:
    """Dispatch by generator name (see :data:`GENERATORS`)."""
    funcs = {
        "tau_aura": gen_tau_aura,
        "tau_star": gen_tau_star,
        "tausa": gen_tausa,
        "tausa_c": gen_tausa_c,
        "beta": gen_basis_beta,
    }
    try:
        return funcs[name](space)
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}") from None


@dataclass(frozen=True)
class TopologyBundle:
    tau_aura: FiniteTopology
    tau_star: FiniteTopology
    tausa: FiniteTopology
    tausa_c: FiniteTopology

    @classmethod
    def of(cls, space: IdealAuraSpace) -> TopologyBundle:
        return cls(gen_tau_aura(space), gen_tau_star(space), gen_tausa(space), gen_tausa_c(space))

    def chain_holds(self) -> bool:
        return self.tau_aura.opens <= self.tausa.opens <= self.tausa_c.opens <= self.tau_star.opens


def tausa_c_within_tau(space: IdealAuraSpace) -> int | None:
    """Probe for the withdrawn containment of the Čech topology in the base one.

    Returns an open set of the Čech ideal-aura topology that is not open in
    the base topology, or ``None`` when the containment happens to hold.
    """
    base = space.topology.opens
    for g in gen_tausa_c(space).opens:
        if g not in base:
            return g
    return None
