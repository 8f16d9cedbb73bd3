"""Maps between finite ideal-aura spaces and the continuity classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classifiers import class_tables
from .core import IdealAuraSpace, SetFamily
from .topologies import gen_tau_aura, gen_tau_star, gen_tausa, gen_tausa_c

FLAGS = ("continuous", "alpha", "semi", "pre", "beta")
# profile flag -> class table of the source
_CLASS_OF = {"continuous": "ia_open", "alpha": "alpha", "semi": "semi", "pre": "pre", "beta": "beta"}


class NotTransitive(ValueError):
    """The source scope function is not transitive."""


@dataclass(frozen=True)
class SpaceMap:
    source: IdealAuraSpace
    target: IdealAuraSpace
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.n:
            raise ValueError(f"map table has {len(self.table)} entries for {self.source.n} source points")
        bad = [y for y in self.table if not 0 <= y < self.target.n]
        if bad:
            raise ValueError(f"map values outside the target: {bad}")

    @classmethod
    def identity(cls, source: IdealAuraSpace, target: IdealAuraSpace | None = None) -> SpaceMap:
        return cls(source, target if target is not None else source, tuple(range(source.n)))

    @classmethod
    def constant(cls, source: IdealAuraSpace, target: IdealAuraSpace, y: int = 0) -> SpaceMap:
        return cls(source, target, (y,) * source.n)

    def preimage(self, v: int) -> int:
        out = 0
        for x, y in enumerate(self.table):
            if v >> y & 1:
                out |= 1 << x
        return out


def continuity_witness(fmap: SpaceMap, source_family: SetFamily, target_family: Iterable[int]) -> int | None:
    """First target member whose preimage misses ``source_family``, else ``None``."""
    for v in target_family:
        if fmap.preimage(v) not in source_family:
            return v
    return None


def is_continuous(fmap: SpaceMap, source_family: SetFamily, target_family: Iterable[int]) -> bool:
    return continuity_witness(fmap, source_family, target_family) is None


def target_family(space: IdealAuraSpace, reading: str) -> SetFamily:
    """Target family for continuity: ``"cech"`` (Čech ideal-aura topology) or ``"topology"``."""
    if reading == "cech":
        return gen_tausa_c(space).opens
    if reading == "topology":
        return space.topology.opens
    raise ValueError(f"target reading must be 'cech' or 'topology', not {reading!r}")


def ia_continuity_profile(fmap: SpaceMap, reading: str = "cech", closure: str = "step") -> dict[str, bool]:
    classes = class_tables(fmap.source, closure)
    targets = target_family(fmap.target, reading)
    return {
        flag: all(classes[_CLASS_OF[flag]][fmap.preimage(v)] for v in targets)
        for flag in FLAGS
    }


def profile_hierarchy_holds(profile: dict[str, bool]) -> bool:
    p = profile
    return (
        (not p["continuous"] or p["alpha"])
        and (not p["alpha"] or (p["semi"] and p["pre"]))
        and (not p["semi"] or p["beta"])
        and (not p["pre"] or p["beta"])
    )


@dataclass
class ContinuityReport:
    """Outcome of a theorem check on one map.

    ``mode`` is ``"asserted"`` when the hypotheses hold and ``"probe"``
    otherwise; ``failures`` names every clause that did not hold.
    """

    mode: str
    clauses: dict[str, bool] = field(default_factory=dict)
    probe: dict[str, bool] = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.clauses.items() if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures


def decomposition_check(
    fmap: SpaceMap, reading: str = "topology", require_transitive: bool = False
) -> ContinuityReport:
    """Check both decomposition equivalences for one map.

    (i)  open-continuous iff semi- and pre-continuous;
    (ii) open-continuous iff alpha-continuous.

    A non-transitive source degrades the check to a probe, or raises
    :class:`NotTransitive` when ``require_transitive`` is set.
    """
    transitive = fmap.source.is_transitive()
    if not transitive and require_transitive:
        raise NotTransitive("decomposition needs a transitive source scope function")
    p = ia_continuity_profile(fmap, reading)
    return ContinuityReport(
        mode="asserted" if transitive else "probe",
        clauses={
            "i": p["continuous"] == (p["semi"] and p["pre"]),
            "ii": p["continuous"] == p["alpha"],
        },
    )


def comparison_chain_check(fmap: SpaceMap, reading: str = "topology") -> ContinuityReport:
    """aura-continuous => ideal-aura-continuous => star-continuous.

    The extra clause ``iii`` (star-continuous => continuous for the base
    topology) is reported in ``probe`` and never counts as a failure.
    """
    src = fmap.source
    targets = target_family(fmap.target, reading)
    cont = {
        name: is_continuous(fmap, fam.opens, targets)
        for name, fam in (
            ("tau_aura", gen_tau_aura(src)),
            ("tausa", gen_tausa(src)),
            ("tau_star", gen_tau_star(src)),
            ("tau", src.topology),
        )
    }
    return ContinuityReport(
        mode="asserted",
        clauses={
            "i": not cont["tau_aura"] or cont["tausa"],
            "ii": not cont["tausa"] or cont["tau_star"],
        },
        probe={"iii": not cont["tau_star"] or cont["tau"]},
    )


# -- vectorised sweeps over every map ----------------------------------------

def all_tables(n_source: int, n_target: int) -> np.ndarray:
    """Every map ``range(n_source) -> range(n_target)`` in lexicographic order."""
    return np.array(list(itertools.product(range(n_target), repeat=n_source)), dtype=np.int64).reshape(
        -1, n_source
    )


def preimage_matrix(maps: np.ndarray, n_target: int) -> np.ndarray:
    """``out[f, V]`` is the preimage of target subset ``V`` under map ``f``."""
    vs = np.arange(1 << n_target, dtype=np.int64)
    out = np.zeros((len(maps), len(vs)), dtype=np.int64)
    for x in range(maps.shape[1]):
        out |= ((vs[None, :] >> maps[:, x][:, None]) & 1) << x
    return out


def sweep_profiles(source: IdealAuraSpace, family: Sequence[int], pre: np.ndarray, closure: str = "step"):
    """Profile flags of every map at once: ``{flag: bool array over maps}``."""
    classes = class_tables(source, closure)
    cols = pre[:, list(family)]
    return {flag: classes[_CLASS_OF[flag]][cols].all(axis=1) for flag in FLAGS}
