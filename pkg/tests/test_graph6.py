import networkx as nx
import pytest
from conftest import cubic_graphs_strategy, golden
from hypothesis import given, settings

from z4z2color import generators as gen
from z4z2color.errors import MalformedGraph6, NotCubic
from z4z2color.graph6 import decode_edges, parse_graph6, read_graph6_file, to_graph6


@settings(max_examples=60, deadline=None)
@given(cubic_graphs_strategy())
def test_round_trip_and_networkx_agree(g):
    s = to_graph6(g)
    assert parse_graph6(s) == g
    assert nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip() == s
    back = nx.from_graph6_bytes(s.encode())
    assert sorted(tuple(sorted(e)) for e in back.edges()) == list(g.edges)


def test_header_is_accepted():
    s = to_graph6(gen.petersen())
    assert parse_graph6(">>graph6<<" + s) == gen.petersen()


def test_long_size_header():
    n = 100
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, i + n // 2) for i in range(n // 2)]
    g = parse_graph6(to_graph6_of(n, edges))
    assert g.n == n and g.m == 150


def to_graph6_of(n, edges):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from(edges)
    return nx.to_graph6_bytes(nxg, header=False).decode().strip()


@pytest.mark.parametrize("bad", ["", "I", "I\x7f", "Iabc", "~", "~?@", "Ihe?iCHHG!", "Ihe?iCHHGxyz"])
def test_malformed_strings(bad):
    with pytest.raises(MalformedGraph6):
        decode_edges(bad)


def test_not_cubic_is_rejected():
    with pytest.raises(NotCubic):
        parse_graph6(to_graph6_of(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))


def test_golden_fixtures_match_generators():
    made = dict(gen.named_snarks())
    made.update({"K4": gen.k4(), "K33": gen.k33(), "prism": gen.prism(3), "Q3": gen.cube()})
    fixed = golden()
    assert set(fixed) == set(made)
    for name, g in fixed.items():
        assert g == made[name], name


def test_read_file_skips_comments(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text("# two graphs\n\n" + to_graph6(gen.k4()) + "\n  " + to_graph6(gen.petersen()) + "  \n")
    assert read_graph6_file(p) == [gen.k4(), gen.petersen()]
