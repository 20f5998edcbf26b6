import itertools

import networkx as nx
import pytest
from conftest import cubic_graphs_strategy, no_perfect_matching
from hypothesis import given, settings

from z4z2color import generators as gen
from z4z2color.errors import NoPerfectMatching, NotPerfectMatching
from z4z2color.factor import enumerate_perfect_matchings, oddness, oddness_witness, two_factor
from z4z2color.graph import EdgeSet


def brute_perfect_matchings(g):
    out = []
    for combo in itertools.combinations(range(g.m), g.n // 2):
        if g.is_perfect_matching(EdgeSet(combo)):
            out.append(EdgeSet(combo))
    return out


@pytest.mark.parametrize("name,count", [("K4", 3), ("K3,3", 6), ("Q3", 9), ("prism", 4)])
def test_control_matching_counts(name, count):
    assert len(list(enumerate_perfect_matchings(gen.controls()[name]))) == count


def test_petersen_has_six_perfect_matchings():
    pms = list(enumerate_perfect_matchings(gen.petersen()))
    assert len(pms) == 6
    assert pms == sorted(pms)


@settings(max_examples=40, deadline=None)
@given(cubic_graphs_strategy(sizes=(4, 6, 8, 10, 12)))
def test_enumeration_matches_brute_force(g):
    ours = list(enumerate_perfect_matchings(g))
    assert ours == sorted(brute_perfect_matchings(g))


def test_limit_is_respected():
    assert len(list(enumerate_perfect_matchings(gen.cube(), limit=4))) == 4


def test_no_perfect_matching():
    with pytest.raises(NoPerfectMatching):
        list(enumerate_perfect_matchings(no_perfect_matching()))


def test_two_factor_cycles():
    g = gen.petersen()
    for pm in enumerate_perfect_matchings(g):
        f = two_factor(g, pm)
        assert sorted(len(c) for c in f.cycles) == [5, 5]
        assert f.odd_count == 2
        assert sorted(v for c in f.cycles for v in c) == list(range(10))
        for i, ce in enumerate(f.cycle_edges):
            assert set(ce) <= set(f.edge_set)
            assert all(f.cycle_of(v) == i for v in f.cycles[i])


def test_two_factor_rejects_non_matching():
    g = gen.k4()
    with pytest.raises(NotPerfectMatching):
        two_factor(g, EdgeSet([0]))


@settings(max_examples=30, deadline=None)
@given(cubic_graphs_strategy(sizes=(6, 8, 10, 12, 14)))
def test_two_factor_is_spanning_union_of_cycles(g):
    pm = next(enumerate_perfect_matchings(g))
    f = two_factor(g, pm)
    sub = nx.Graph([g.edges[e] for e in f.edge_set])
    assert sub.number_of_nodes() == g.n
    assert all(d == 2 for _, d in sub.degree())
    assert sorted(map(len, nx.connected_components(sub))) == sorted(map(len, f.cycles))


def test_oddness_values():
    assert oddness(gen.k4()) == 0
    assert oddness(gen.petersen()) == 2
    for name in ("blanusa1", "blanusa2", "flower5"):
        w = oddness_witness(gen.by_name(name))
        assert w.oddness == 2 and w.proven_minimal
        f, k = w
        assert f.odd_count == k
