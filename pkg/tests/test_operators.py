import numpy as np
import pytest

from auraspace import operators as ops
from auraspace.io import load_fixture
from oracle import RefSpace

SCALAR = {
    "local_star": ops.local_star,
    "aura_local": ops.aura_local,
    "closure": ops.ia_closure,
    "interior": ops.ia_interior,
    "fixpoint": ops.ia_closure_fixpoint,
    "fixpoint_interior": ops.ia_interior_fixpoint,
    "psi": ops.psi_aura,
    "aura_closure": ops.aura_closure,
    "aura_interior": ops.aura_interior,
}
TABLE = {
    "local_star": "star",
    "aura_local": "aura_local",
    "closure": "closure",
    "interior": "interior",
    "fixpoint": "fixpoint",
    "fixpoint_interior": "fixpoint_interior",
    "psi": "psi",
    "aura_closure": "aura_closure",
    "aura_interior": "aura_interior",
}


def _mask(space, s):
    return space.universe.mask(s)


def test_scalar_operators_match_reference(small_spaces):
    for space in small_spaces:
        ref = RefSpace.of(space)
        for a in ref.subsets():
            m = _mask(space, a)
            for name, fn in SCALAR.items():
                assert fn(space, m) == _mask(space, getattr(ref, name)(a)), (name, space, a)
            assert ops.star_closure(space, m) == _mask(space, ref.star_closure(a))


def test_tables_match_scalar(small_spaces):
    for space in small_spaces:
        t = ops.tables(space)
        for m in range(space.full + 1):
            for name, fn in SCALAR.items():
                assert int(getattr(t, TABLE[name])[m]) == fn(space, m), (name, space, m)
            assert int(t.star_closure[m]) == ops.star_closure(space, m)
            assert int(t.classical_closure[m]) == space.topology.closure(m)
            assert int(t.classical_interior[m]) == space.topology.interior(m)
            assert int(t.psi_star[m]) == ops.psi_star(space, m)
            assert int(t.stabilized_at[m]) == ops.ia_closure_trace(space, m).stabilized_at


def test_tables_are_cached():
    space = load_fixture("hier")
    assert ops.tables(space) is ops.tables(space)


def test_trace_on_four_point_chain():
    space = load_fixture("nonidem4")
    u = space.universe
    trace = ops.ia_closure_trace(space, u.parse_set("{d}"))
    assert [u.format_set(s) for s in trace.steps] == ["{d}", "{c,d}", "{b,c,d}", "{a,b,c,d}"]
    assert trace.stabilized_at == 3
    assert trace.fixpoint == u.full
    assert trace.format(u) == "{d} ⊂ {c,d} ⊂ {b,c,d} ⊂ {a,b,c,d}  [stabilized at 3]"


def test_trace_of_closed_set_is_trivial():
    space = load_fixture("nonidem4")
    trace = ops.ia_closure_trace(space, space.full)
    assert trace.steps == (space.full,)
    assert trace.stabilized_at == 0


@pytest.mark.parametrize("name", ["hier", "chain-strict", "nonidem4", "not-closed"])
def test_interior_duality_on_fixtures(name):
    space = load_fixture(name)
    t = ops.tables(space)
    comp = space.full ^ t.masks
    assert np.array_equal(t.interior, space.full ^ t.closure[comp])
    assert np.array_equal(t.interior, t.masks & t.psi)


def test_is_transitive_delegates():
    assert ops.is_transitive(load_fixture("hier"))
