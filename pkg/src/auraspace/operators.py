"""Point-set operators of an ideal-aura space.

Every operator has a scalar form working on one bitmask, and
:func:`tables` evaluates all of them at once over the whole powerset as
numpy arrays indexed by the subset mask. The two are computed by separate
code paths and the test-suite holds them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import IdealAuraSpace, points_of


def local_star(space: IdealAuraSpace, a: int) -> int:
    """Points all of whose open neighbourhoods meet ``a`` outside the ideal."""
    ideal = space.ideal
    out = 0
    for x in range(space.n):
        if all((o & a) not in ideal for o in space.topology.opens if o >> x & 1):
            out |= 1 << x
    return out


def aura_local(space: IdealAuraSpace, a: int) -> int:
    """Points whose aura meets ``a`` in a set outside the ideal."""
    ideal = space.ideal
    out = 0
    for x, ax in enumerate(space.aura):
        if (ax & a) not in ideal:
            out |= 1 << x
    return out


def star_closure(space: IdealAuraSpace, a: int) -> int:
    return a | local_star(space, a)


def aura_closure(space: IdealAuraSpace, a: int) -> int:
    out = 0
    for x, ax in enumerate(space.aura):
        if ax & a:
            out |= 1 << x
    return out


def aura_interior(space: IdealAuraSpace, a: int) -> int:
    out = 0
    for x in points_of(a):
        if space.aura[x] & ~a == 0:
            out |= 1 << x
    return out


def ia_closure(space: IdealAuraSpace, a: int) -> int:
    return a | aura_local(space, a)


@dataclass(frozen=True)
class ClosureTrace:
    """``steps[k]`` is the k-fold closure; the last step is the fixpoint."""

    steps: tuple[int, ...]

    @property
    def stabilized_at(self) -> int:
        return len(self.steps) - 1

    @property
    def fixpoint(self) -> int:
        return self.steps[-1]

    def format(self, universe) -> str:
        chain = " ⊂ ".join(universe.format_set(s) for s in self.steps)
        return f"{chain}  [stabilized at {self.stabilized_at}]"


def ia_closure_trace(space: IdealAuraSpace, a: int) -> ClosureTrace:
    steps = [a]
    while True:
        nxt = ia_closure(space, steps[-1])
        if nxt == steps[-1]:
            return ClosureTrace(tuple(steps))
        steps.append(nxt)


def ia_closure_fixpoint(space: IdealAuraSpace, a: int) -> int:
    return ia_closure_trace(space, a).fixpoint


def psi_aura(space: IdealAuraSpace, a: int) -> int:
    full = space.full
    ideal = space.ideal
    out = 0
    for x, ax in enumerate(space.aura):
        if (ax & ~a) in ideal:
            out |= 1 << x
    assert out == full & ~aura_local(space, full & ~a), "psi formulas disagree"
    return out


def psi_star(space: IdealAuraSpace, a: int) -> int:
    """Classical psi: complement of the local function of the complement."""
    full = space.full
    return full & ~local_star(space, full & ~a)


def ia_interior(space: IdealAuraSpace, a: int) -> int:
    full = space.full
    out = full & ~ia_closure(space, full & ~a)
    if __debug__:
        assert out == a & psi_aura(space, a)
        assert out == sum(1 << x for x in points_of(a) if (space.aura[x] & ~a) in space.ideal)
    return out


def ia_interior_fixpoint(space: IdealAuraSpace, a: int) -> int:
    full = space.full
    return full & ~ia_closure_fixpoint(space, full & ~a)


def is_transitive(space: IdealAuraSpace) -> bool:
    return space.is_transitive()


# -- whole-powerset tables ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class OperatorTables:
    """Every operator evaluated on every subset; index an array by the mask."""

    masks: np.ndarray
    star: np.ndarray
    aura_local: np.ndarray
    star_closure: np.ndarray
    aura_closure: np.ndarray
    aura_interior: np.ndarray
    closure: np.ndarray          # single-step ideal-aura closure
    interior: np.ndarray         # its dual
    psi: np.ndarray
    psi_star: np.ndarray
    fixpoint: np.ndarray         # iterated closure at its fixpoint
    fixpoint_interior: np.ndarray
    stabilized_at: np.ndarray
    classical_closure: np.ndarray
    classical_interior: np.ndarray


def _hits(masks: np.ndarray, sets, member: np.ndarray) -> np.ndarray:
    """Bitmask of ``x`` such that ``sets[x] & A`` is not a member, per ``A``."""
    out = np.zeros_like(masks)
    for x, s in enumerate(sets):
        out |= (~member[masks & s]).astype(np.int64) << x
    return out


def tables(space: IdealAuraSpace) -> OperatorTables:
    """All operator tables for ``space`` (cached on the space)."""
    cached = space._cache.get("tables")
    if cached is not None:
        return cached
    n, full = space.n, space.full
    masks = np.arange(1 << n, dtype=np.int64)
    comp = full ^ masks
    member = space.ideal.membership
    aura = space.aura

    al = _hits(masks, aura, member)
    # the ideal is hereditary, so the smallest neighbourhood decides A*
    star = _hits(masks, space.topology.minimal_neighborhoods, member)
    nonempty = np.zeros(1 << n, dtype=bool)
    nonempty[1:] = True
    claura = _hits(masks, aura, ~nonempty)

    intaura = np.zeros_like(masks)
    for x, ax in enumerate(aura):
        intaura |= (((masks >> x) & 1).astype(bool) & ((ax & ~masks) == 0)).astype(np.int64) << x

    closure = masks | al
    interior = full ^ closure[comp]
    psi = full ^ al[comp]
    psi_st = full ^ star[comp]

    fix = masks.copy()
    stab = np.zeros(1 << n, dtype=np.int64)
    while True:
        nxt = closure[fix]
        moved = nxt != fix
        if not moved.any():
            break
        stab += moved
        fix = nxt

    inner = np.zeros_like(masks)
    for o in space.topology.opens:
        inner |= np.where((o & ~masks) == 0, o, 0)

    t = OperatorTables(
        masks=masks,
        star=star,
        aura_local=al,
        star_closure=masks | star,
        aura_closure=claura,
        aura_interior=intaura,
        closure=closure,
        interior=interior,
        psi=psi,
        psi_star=psi_st,
        fixpoint=fix,
        fixpoint_interior=full ^ fix[comp],
        stabilized_at=stab,
        classical_closure=full ^ inner[comp],
        classical_interior=inner,
    )
    for arr in vars(t).values():
        arr.setflags(write=False)
    space._cache["tables"] = t
    return t
