import itertools

import pytest
from conftest import correction_instances, cubic_graphs_strategy, random_small, small_snarks
from hypothesis import given, settings

from z4z2color.coloring import check_certificate, verify
from z4z2color.correction import (
    Component,
    build_B,
    build_components,
    build_q_family,
    check_hypothesis,
    correct_and_color,
    interlaced,
    modify_matching,
    normalize_paths,
    odd_degree_nodes,
    symmetric_difference,
)
from z4z2color.factor import two_factor
from z4z2color.graph import EdgeSet
from z4z2color.graph6 import parse_graph6
from z4z2color.structures import FPath, MatchingInF, f_complement, make_f_matching, reduce

# a 12-vertex graph where one component of B minus the path-nodes holds a single 3-odd loop
INFEASIBLE_G6 = "KCWOJCS_c@l?"
INFEASIBLE_PM = [0, 3, 8, 13, 14, 17]
INFEASIBLE_M = [2, 7, 10, 11, 12]
INFEASIBLE_PATHS = [(1, 7, 6, 9)]


def instances(limit=150):
    graphs = list(small_snarks().values()) + random_small(20)
    return list(itertools.islice(correction_instances(graphs), limit))


@pytest.fixture(scope="module")
def cases():
    return instances()


def test_components_partition_and_alternate(cases):
    for g, f, m, fm, fc in cases:
        cf = build_components(g, f, m, fm)
        edges = [e for c in cf.components for e in c.edges]
        assert len(edges) == len(set(edges))
        assert EdgeSet(edges) == f.edge_set - fm.end_edges
        for c in cf.components:
            flags = [e in m.edges for e in c.edges]
            assert all(flags[j] != flags[j - 1] for j in range(1, len(flags)))


def test_shared_edges_partition(cases):
    for g, f, m, fm, fc in cases:
        cf, b = build_B(g, f, m, fm, fc)
        owned = set(fc.edge_set) | set(fm.edge_set)
        comp_edges = {e for c in cf.components for e in c.edges}
        flat = [e for es in b.shared.values() for e in es]
        assert len(flat) == len(set(flat))
        assert set(flat) == comp_edges & owned
        for key, es in b.shared.items():
            assert b.selected_edge(*key) == min(es)


def test_hypothesis_pairs_or_names_odd_component(cases):
    for g, f, m, fm, fc in cases:
        cf, b = build_B(g, f, m, fm, fc)
        raw = check_hypothesis(b, fc)
        odd = {("L", i) for i in fc.three_odd_loops}
        if isinstance(raw, list):
            ends = [p[0] for p in raw] + [p[-1] for p in raw]
            assert sorted(ends) == sorted(odd)
            assert odd_degree_nodes(symmetric_difference(raw)) == odd
        else:
            assert len(set(raw.component) & odd) % 2 == 1


def test_infeasible_instance():
    g = parse_graph6(INFEASIBLE_G6)
    f = two_factor(g, EdgeSet(INFEASIBLE_PM))
    m = MatchingInF(EdgeSet(INFEASIBLE_M), f)
    h = reduce(g, f, m)
    paths = []
    for vs in INFEASIBLE_PATHS:
        paths.append(FPath(vs, tuple(g.edge_index(a, b) for a, b in zip(vs, vs[1:]))))
    fm = make_f_matching(h, paths)
    fc = f_complement(h, fm)
    assert not fc.three_even
    rep = correct_and_color(g, f, m, fm, fc)
    assert not rep.ok and rep.infeasible is not None
    assert rep.nontrivial
    assert "3-odd" in rep.infeasible.reason


def test_full_repair_claims(cases):
    ok = 0
    for g, f, m, fm, fc in cases:
        rep = correct_and_color(g, f, m, fm, fc)
        if rep.infeasible is not None:
            continue
        assert all(rep.claims.values()), rep.claims
        assert set(rep.claims) == {
            "odd_ends", "no_interlacing", "m_paths", "matching", "keeps_three_vertices", "keeps_loop_edges",
            "new_three_on_loops", "splits_into_paths", "same_loops", "three_even", "parity",
        }
        assert verify(rep.coloring).ok
        assert check_certificate(rep.certificate).ok
        w = rep.witness
        assert w.matching.edges.issubset(f.edge_set)
        assert reduce(g, f, m).three_vertices <= reduce(g, f, w.matching).three_vertices
        assert sorted(lp.edges for lp in w.complement.loops) == sorted(lp.edges for lp in fc.loops)
        ok += 1
    assert ok >= 5


def test_stepwise_pipeline_matches_driver(cases):
    for g, f, m, fm, fc in cases[:40]:
        cf, b = build_B(g, f, m, fm, fc)
        raw = check_hypothesis(b, fc)
        if not isinstance(raw, list):
            continue
        pf = normalize_paths(raw, b, cf, fc)
        qf = build_q_family(pf, cf, m)
        m_star = modify_matching(m, qf, fm)
        rep = correct_and_color(g, f, m, fm, fc)
        assert rep.witness.matching.edges == m_star.edges


def test_three_even_input_is_trivial():
    from z4z2color.oracle import characterization_search

    g = small_snarks()["petersen"]
    w = characterization_search(g)
    rep = correct_and_color(g, *w)
    assert rep.ok and not rep.nontrivial and not rep.claims


def test_interlacing_on_abstract_component():
    comp = Component(tuple(range(9)), tuple(range(8)), False)
    assert interlaced(comp, [(0, 4), (2, 6)])
    assert not interlaced(comp, [(0, 2), (4, 6)])
    assert not interlaced(comp, [(0, 6), (2, 4)])
    assert interlaced(comp, [(6, 2), (0, 4)])


def test_symmetric_difference_cancels_shared_edges():
    a, b, c = ("L", 0), ("C", 0), ("L", 1)
    d = ("L", 2)
    raw = [[a, b, c], [c, b, d]]
    diff = symmetric_difference(raw)
    assert diff == frozenset({(b, a), (b, d)})
    assert odd_degree_nodes(diff) == {a, d}


@settings(max_examples=20, deadline=None)
@given(cubic_graphs_strategy(sizes=(10, 12, 14)))
def test_random_graphs_never_violate_claims(g):
    for g_, f, m, fm, fc in itertools.islice(correction_instances([g], 10, 2), 30):
        rep = correct_and_color(g_, f, m, fm, fc)
        if rep.ok:
            assert all(rep.claims.values())
