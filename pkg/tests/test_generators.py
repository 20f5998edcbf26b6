import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from z4z2color import generators as gen
from z4z2color import oracle
from z4z2color.errors import BadParameter
from z4z2color.graph import girth, is_bridgeless


def aut_order(g):
    nxg = g.to_networkx()
    return sum(1 for _ in GraphMatcher(nxg, nxg).isomorphisms_iter())


def test_petersen_matches_networkx():
    assert nx.is_isomorphic(gen.petersen().to_networkx(), nx.petersen_graph())
    assert aut_order(gen.petersen()) == 120


def test_blanusa_automorphism_orders():
    assert aut_order(gen.blanusa(1)) == 8
    assert aut_order(gen.blanusa(2)) == 4
    assert not nx.is_isomorphic(gen.blanusa(1).to_networkx(), gen.blanusa(2).to_networkx())


@pytest.mark.parametrize("name,n,g_girth", [
    ("petersen", 10, 5), ("blanusa1", 18, 5), ("blanusa2", 18, 5), ("flower5", 20, 5), ("flower7", 28, 6),
])
def test_named_snarks(name, n, g_girth):
    g = gen.named_snarks()[name]
    assert g.n == n
    assert girth(g) == g_girth
    assert is_bridgeless(g)
    assert not oracle.is_3_edge_colorable(g).colorable


def test_controls_are_colorable():
    for name, g in gen.controls().items():
        assert oracle.is_3_edge_colorable(g).colorable, name


def test_flower_parameters():
    with pytest.raises(BadParameter):
        gen.flower(4)
    with pytest.raises(BadParameter):
        gen.flower(1)
    assert gen.flower(3).n == 12


def test_permutation_spec_validation():
    with pytest.raises(BadParameter):
        gen.PermutationSpec(5, (0, 1, 2, 3, 3))
    with pytest.raises(BadParameter):
        gen.PermutationSpec(2, (0, 1))
    assert gen.permutation_graph(gen.PermutationSpec(3, (0, 1, 2))).graph.n == 6


def test_permutation_graph_factor_is_the_two_cycles():
    pg = gen.permutation_graph(gen.PermutationSpec(5, gen.PETERSEN_PERMUTATION))
    assert sorted(map(sorted, pg.factor.cycles)) == [list(range(5)), list(range(5, 10))]


def test_permutation_snark_sampler():
    a = gen.random_permutation_snarks(6, seed=3)
    b = gen.random_permutation_snarks(6, seed=3)
    assert [p.spec for p in a] == [p.spec for p in b]
    assert len({p.spec for p in a}) == 6
    for p in a:
        assert p.spec.n in (5, 9)  # the only sizes up to 13 with permutation snarks found
        assert not oracle.is_3_edge_colorable(p.graph).colorable


def test_truncation_keeps_snarks():
    g = gen.truncate_vertex(gen.petersen(), 0)
    assert g.n == 12 and girth(g) == 3 and is_bridgeless(g)
    assert not oracle.is_3_edge_colorable(g).colorable
    assert gen.by_name("truncated-petersen:2").n == 14


def test_random_cubic_graphs_are_reproducible():
    a = list(gen.random_cubic_graphs(5, [10, 12], seed=9))
    b = list(gen.random_cubic_graphs(5, [10, 12], seed=9))
    assert a == b
    assert [g.n for g in a] == [10, 12, 10, 12, 10]


@pytest.mark.parametrize("spec,n", [
    ("petersen", 10), ("blanusa1", 18), ("blanusa:2", 18), ("flower:7", 28), ("flower5", 20),
    ("prism:5", 10), ("k4", 4), ("K33", 6), ("q3", 8), ("perm:0,2,4,1,3", 10),
])
def test_by_name(spec, n):
    assert gen.by_name(spec).n == n


def test_by_name_unknown():
    with pytest.raises(BadParameter):
        gen.by_name("dodecahedron")
