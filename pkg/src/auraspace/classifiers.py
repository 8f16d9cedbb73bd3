"""Membership tests for the generalized ideal-aura open classes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import IdealAuraSpace, SetFamily
from .operators import (
    ia_closure,
    ia_closure_fixpoint,
    ia_interior,
    ia_interior_fixpoint,
    tables,
)
from .topologies import gen_tausa_c

CLASSES = ("ia_open", "semi", "pre", "alpha", "beta", "b_set")


@dataclass(frozen=True)
class OpennessProfile:
    ia_open: bool
    semi: bool
    pre: bool
    alpha: bool
    beta: bool
    b_set: bool

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in CLASSES}

    def hierarchy_holds(self) -> bool:
        return (
            (not self.ia_open or self.alpha)
            and (not self.alpha or (self.semi and self.pre))
            and (not self.semi or self.beta)
            and (not self.pre or self.beta)
        )


def _operators(space: IdealAuraSpace, closure: str) -> tuple[np.ndarray, np.ndarray]:
    t = tables(space)
    if closure == "step":
        return t.closure, t.interior
    if closure == "fixpoint":
        return t.fixpoint, t.fixpoint_interior
    raise ValueError(f"closure must be 'step' or 'fixpoint', not {closure!r}")


def class_tables(space: IdealAuraSpace, closure: str = "step") -> dict[str, np.ndarray]:
    """Boolean array per class, indexed by subset mask.

    ``closure="fixpoint"`` composes the iterated closure instead of the
    single-step one; the default follows the definitions as written.
    """
    key = ("classes", closure)
    if key in space._cache:
        return space._cache[key]
    cl, it = _operators(space, closure)
    a = tables(space).masks

    def within(sup: np.ndarray) -> np.ndarray:
        return (a & ~sup) == 0

    out = {
        "ia_open": within(it),
        "semi": within(cl[it]),
        "pre": within(it[cl]),
        "alpha": within(it[cl[it]]),
        "beta": within(cl[it[cl]]),
    }
    out["b_set"] = _b_set_table(space, cl, it)
    for arr in out.values():
        arr.setflags(write=False)
    space._cache[key] = out
    return out


def _b_set_table(space: IdealAuraSpace, cl: np.ndarray, it: np.ndarray) -> np.ndarray:
    masks = tables(space).masks
    opens = gen_tausa_c(space).opens.as_array()
    regular = np.flatnonzero(cl[it] == masks)
    out = np.zeros(len(masks), dtype=bool)
    out[(opens[:, None] & regular[None, :]).ravel()] = True
    return out


def classify(space: IdealAuraSpace, a: int, closure: str = "step") -> OpennessProfile:
    """Evaluate every class for one subset with the scalar operators."""
    if closure == "step":
        def cl(s): return ia_closure(space, s)
        def it(s): return ia_interior(space, s)
    elif closure == "fixpoint":
        def cl(s): return ia_closure_fixpoint(space, s)
        def it(s): return ia_interior_fixpoint(space, s)
    else:
        raise ValueError(f"closure must be 'step' or 'fixpoint', not {closure!r}")
    return OpennessProfile(
        ia_open=a & ~it(a) == 0,
        semi=a & ~cl(it(a)) == 0,
        pre=a & ~it(cl(a)) == 0,
        alpha=a & ~it(cl(it(a))) == 0,
        beta=a & ~cl(it(cl(a))) == 0,
        b_set=is_b_set(space, a, closure) is not None,
    )


def is_b_set(space: IdealAuraSpace, a: int, closure: str = "step") -> tuple[int, int] | None:
    """A pair ``(U, V)`` with ``U`` Čech-open, ``V`` regular and ``A = U ∩ V``.

    ``U`` is scanned in ascending order and ``V`` in descending order, so a
    Čech-open ``A`` is reported as ``(A, X)``. Returns ``None`` if no pair exists.
    """
    cl, it = _operators(space, closure)
    for u in gen_tausa_c(space).opens:
        if a & ~u:
            continue
        for v in range(space.full, -1, -1):
            if u & v == a and int(cl[it[v]]) == v:
                return u, v
    return None


def class_families(space: IdealAuraSpace, closure: str = "step") -> dict[str, SetFamily]:
    return {
        name: SetFamily(int(m) for m in np.flatnonzero(arr))
        for name, arr in class_tables(space, closure).items()
    }


def aura_class_tables(space: IdealAuraSpace) -> dict[str, np.ndarray]:
    """The same five classes built from the plain aura closure and interior."""
    t = tables(space)
    cl, it, a = t.aura_closure, t.aura_interior, t.masks

    def within(sup: np.ndarray) -> np.ndarray:
        return (a & ~sup) == 0

    return {
        "ia_open": within(it),
        "semi": within(cl[it]),
        "pre": within(it[cl]),
        "alpha": within(it[cl[it]]),
        "beta": within(cl[it[cl]]),
    }
