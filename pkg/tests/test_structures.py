import itertools

import networkx as nx
import pytest
from conftest import cubic_graphs_strategy
from hypothesis import given, settings

from z4z2color import generators as gen
from z4z2color.errors import MalformedStructure, WrongVertexCount
from z4z2color.factor import enumerate_perfect_matchings, two_factor
from z4z2color.graph import EdgeSet
from z4z2color.structures import (
    FPath,
    MainComponent,
    MatchingInF,
    classify_main_component,
    cycle_matching,
    f_complement,
    iter_f_matchings,
    iter_maximum_matchings,
    make_f_matching,
    reduce,
)


def brute_f_matchings(h):
    """Every F-matching, found with networkx simple paths."""
    g = h.graph
    sub = nx.Graph()
    sub.add_nodes_from(range(g.n))
    for e in h.edge_set:
        sub.add_edge(*g.edges[e], idx=e)
    three = sorted(h.three_vertices)
    paths = {}
    for a, b in itertools.combinations(three, 2):
        found = []
        for vs in nx.all_simple_paths(sub, a, b):
            if any(v in h.three_vertices for v in vs[1:-1]):
                continue
            es = tuple(sub.edges[u, v]["idx"] for u, v in zip(vs, vs[1:]))
            if h.in_f(es[0]) and h.in_f(es[-1]):
                found.append((tuple(vs), es))
        paths[a, b] = found
    out = set()

    def rec(left, chosen, used):
        if not left:
            out.add(frozenset(es for _, es in chosen))
            return
        a = left[0]
        for b in left[1:]:
            for vs, es in paths[a, b]:
                if used & set(vs):
                    continue
                rec([x for x in left if x not in (a, b)], chosen + [(vs, es)], used | set(vs))

    rec(three, [], set())
    return out


def all_f_structures(g, max_matchings=12):
    for pm in enumerate_perfect_matchings(g):
        f = two_factor(g, pm)
        for m in itertools.islice(iter_maximum_matchings(f), max_matchings):
            yield f, m, reduce(g, f, m)


@settings(max_examples=25, deadline=None)
@given(cubic_graphs_strategy(sizes=(6, 8, 10, 12)))
def test_f_matchings_match_brute_force(g):
    for f, m, h in all_f_structures(g, 6):
        ours = {frozenset(p.edges for p in fm.paths) for fm in iter_f_matchings(h, budget=None)}
        # canonical orientation may reverse a path; compare as edge sets
        norm = lambda fam: {frozenset(frozenset(p) for p in s) for s in fam}  # noqa: E731
        assert norm(ours) == norm(brute_f_matchings(h))


def test_petersen_f_matching_iff_theta():
    # a kayak paddle joins its 3-vertices only through a non-F edge
    g = gen.petersen()
    for f, m, h in all_f_structures(g, 25):
        assert len(h.three_vertices) == 2
        fms = list(iter_f_matchings(h))
        assert bool(fms) == (classify_main_component(h) is MainComponent.THETA)
        for fm in fms:
            fc = f_complement(h, fm)
            covered = {v for lp in fc.loops for v in lp.vertices} | {v for p in fm.paths for v in p.vertices}
            assert h.three_vertices <= covered
            for lp in fc.loops:
                assert len(lp.edges) % 2 == 0


def test_maximum_matching_counts():
    g = gen.petersen()
    f = two_factor(g, next(enumerate_perfect_matchings(g)))
    ms = list(iter_maximum_matchings(f))
    assert len(ms) == 25
    assert all(m.is_maximum for m in ms)
    assert len({m.edges for m in ms}) == 25


def test_cycle_matching_leaves_start_uncovered():
    g = gen.petersen()
    f = two_factor(g, next(enumerate_perfect_matchings(g)))
    for start in range(5):
        es = cycle_matching(f, 0, start)
        covered = g.vertices_of(EdgeSet(es))
        assert set(f.cycles[0]) - covered == {f.cycles[0][start]}


def test_matching_outside_factor_rejected():
    g = gen.petersen()
    pm = next(enumerate_perfect_matchings(g))
    f = two_factor(g, pm)
    with pytest.raises(ValueError):
        MatchingInF(EdgeSet([next(iter(pm))]), f)


def test_main_component_kinds():
    kinds = set()
    for name in ("petersen", "blanusa1", "flower5"):
        g = gen.by_name(name)
        for pm in itertools.islice(enumerate_perfect_matchings(g), 20):
            f = two_factor(g, pm)
            if f.odd_count != 2:
                continue
            for m in iter_maximum_matchings(f):
                kinds.add(classify_main_component(reduce(g, f, m)))
    assert MainComponent.THETA in kinds
    assert kinds <= set(MainComponent)


def test_classification_needs_two_three_vertices():
    g = gen.cube()
    f = two_factor(g, next(enumerate_perfect_matchings(g)))
    h = reduce(g, f, next(iter_maximum_matchings(f)))
    with pytest.raises(WrongVertexCount):
        classify_main_component(h)


def test_make_f_matching_validates():
    g = gen.petersen()
    f, m, h, fm = next((f, m, h, fm) for f, m, h in all_f_structures(g) for fm in iter_f_matchings(h))
    assert make_f_matching(h, fm.paths).edge_set == fm.edge_set
    with pytest.raises(MalformedStructure):
        make_f_matching(h, [])
    p = fm.paths[0]
    with pytest.raises(MalformedStructure):
        make_f_matching(h, [FPath(p.vertices[:-1], p.edges[:-1])])
