import pytest

from auraspace.core import SetFamily, Universe
from auraspace.io import load_fixture
from auraspace.topologies import (
    GENERATORS,
    NotACover,
    TopologyBundle,
    gen_basis_beta,
    gen_tau_aura,
    gen_tau_star,
    gen_tausa,
    gen_tausa_c,
    generate,
    tausa_c_within_tau,
    topology_from_basis,
)
from oracle import RefSpace


def _names(space, fam):
    return {frozenset(space.universe.names_of(m)) for m in fam}


def test_generators_match_reference(small_spaces):
    for space in small_spaces:
        ref = RefSpace.of(space)
        assert _names(space, gen_tau_aura(space).opens) == ref.tau_aura()
        assert _names(space, gen_tausa_c(space).opens) == ref.tausa_c()
        assert _names(space, gen_tausa(space).opens) == ref.tausa()
        assert _names(space, gen_tau_star(space).opens) == ref.tau_star()


def test_chain_holds_everywhere(small_spaces):
    for space in small_spaces:
        bundle = TopologyBundle.of(space)
        assert bundle.chain_holds()
        assert space.topology.opens <= bundle.tau_star.opens


def test_basis_generates_aura_topology_when_transitive(small_spaces):
    for space in small_spaces:
        if space.is_transitive():
            built = topology_from_basis(space.universe, gen_basis_beta(space))
            assert built.opens == gen_tausa(space).opens


def test_chain_strict_example():
    space = load_fixture("chain-strict")
    u = space.universe
    assert [u.format_set(m) for m in gen_tau_aura(space).opens] == [
        "{}", "{b}", "{a,b}", "{c}", "{b,c}", "{a,b,c}"
    ]


def test_chain_strict_v2_separates_first_two_topologies():
    space = load_fixture("chain-strict-v2")
    a = space.universe.parse_set("{a}")
    assert a in gen_tausa(space).opens
    assert a not in gen_tau_aura(space).opens
    assert len(gen_tausa(space).opens) == 1 << space.n


def test_generate_dispatch():
    space = load_fixture("hier")
    for name in GENERATORS:
        assert generate(space, name) is not None
    assert isinstance(generate(space, "beta"), SetFamily)
    with pytest.raises(ValueError):
        generate(space, "nope")


def test_basis_must_cover():
    u = Universe.of_size(2)
    with pytest.raises(NotACover):
        topology_from_basis(u, SetFamily([1]))
    assert topology_from_basis(u, SetFamily([1, 2])).opens.members == (0, 1, 2, 3)


def test_withdrawn_containment_probe():
    # the discrete space with the trivial ideal has every set open
    assert tausa_c_within_tau(load_fixture("hier")) is None
