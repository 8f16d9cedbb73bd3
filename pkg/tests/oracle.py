"""Slow reference definitions on frozensets of point names.

Nothing here touches bitmasks or numpy; these functions restate each
definition directly so the package can be checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations

Set = frozenset


def powerset(points) -> list[frozenset]:
    pts = list(points)
    return [Set(c) for c in chain.from_iterable(combinations(pts, r) for r in range(len(pts) + 1))]


@dataclass(frozen=True)
class RefSpace:
    points: frozenset
    opens: frozenset          # of frozensets
    ideal: frozenset          # of frozensets
    aura: dict

    @classmethod
    def of(cls, space) -> RefSpace:
        u = space.universe

        def s(m: int) -> frozenset:
            return Set(u.names_of(m))

        return cls(
            Set(u.names),
            Set(s(o) for o in space.topology.opens),
            Set(s(m) for m in space.ideal.members),
            {u.names[i]: s(a) for i, a in enumerate(space.aura)},
        )

    def subsets(self) -> list[frozenset]:
        return powerset(sorted(self.points))

    def comp(self, a: frozenset) -> frozenset:
        return self.points - a

    # operators ---------------------------------------------------------------

    def local_star(self, a):
        return Set(x for x in self.points if all((u & a) not in self.ideal for u in self.opens if x in u))

    def aura_local(self, a):
        return Set(x for x in self.points if (self.aura[x] & a) not in self.ideal)

    def star_closure(self, a):
        return a | self.local_star(a)

    def closure(self, a):
        return a | self.aura_local(a)

    def interior(self, a):
        return self.comp(self.closure(self.comp(a)))

    def fixpoint(self, a):
        while (b := self.closure(a)) != a:
            a = b
        return a

    def fixpoint_interior(self, a):
        return self.comp(self.fixpoint(self.comp(a)))

    def psi(self, a):
        return Set(x for x in self.points if (self.aura[x] - a) in self.ideal)

    def aura_closure(self, a):
        return Set(x for x in self.points if self.aura[x] & a)

    def aura_interior(self, a):
        return Set(x for x in a if self.aura[x] <= a)

    # families -------------------------------------------------------------------

    def tau_aura(self):
        return {a for a in self.subsets() if all(self.aura[x] <= a for x in a)}

    def open_sets_of(self, cl):
        return {a for a in self.subsets() if cl(self.comp(a)) == self.comp(a)}

    def tausa_c(self):
        return self.open_sets_of(self.closure)

    def tausa(self):
        return self.open_sets_of(self.fixpoint)

    def tau_star(self):
        return self.open_sets_of(self.star_closure)

    def classes(self, a, cl=None, it=None) -> dict[str, bool]:
        cl = cl or self.closure
        it = it or self.interior
        return {
            "ia_open": a <= it(a),
            "semi": a <= cl(it(a)),
            "pre": a <= it(cl(a)),
            "alpha": a <= it(cl(it(a))),
            "beta": a <= cl(it(cl(a))),
            "b_set": any(
                u & v == a
                for u in self.tausa_c()
                for v in self.subsets()
                if cl(it(v)) == v
            ),
        }


def is_topology(points, family) -> bool:
    fam = set(family)
    if Set() not in fam or Set(points) not in fam:
        return False
    return all(a | b in fam and a & b in fam for a in fam for b in fam)


def brute_topologies(points) -> list[set]:
    """Every family of subsets passing the axioms, by exhaustive check."""
    pts = Set(points)
    middle = [s for s in powerset(sorted(pts)) if s and s != pts]
    out = []
    for r in range(len(middle) + 1):
        for combo in combinations(middle, r):
            fam = {Set(), pts, *combo}
            if is_topology(pts, fam):
                out.append(fam)
    return out


def brute_ideals(points) -> list[set]:
    subsets = powerset(sorted(points))
    out = []
    for bits in range(1 << len(subsets)):
        fam = {s for i, s in enumerate(subsets) if bits >> i & 1}
        if Set() not in fam:
            continue
        if all(t in fam for s in fam for t in powerset(s)) and all(a | b in fam for a in fam for b in fam):
            out.append(fam)
    return out
