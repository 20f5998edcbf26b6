import itertools
import os
import subprocess
import sys

import networkx as nx
import pytest
from conftest import bridged_pair, cubic_graphs_strategy
from hypothesis import given, settings

from z4z2color import _kernels
from z4z2color import generators as gen
from z4z2color import oracle
from z4z2color.coloring import ELEMENTS, verify, zero_sum_blocks
from z4z2color.errors import BudgetExhausted
from z4z2color.graph import EdgeSet


def test_automorphisms_are_group_automorphisms():
    auts = oracle.automorphisms()
    assert len(auts) == 8
    for phi in auts:
        assert len(set(phi.values())) == 8
        for a, b in itertools.product(ELEMENTS, repeat=2):
            assert phi[a + b] == phi[a] + phi[b]
    assert len({tuple(sorted(phi.items())) for phi in auts}) == 8


def test_automorphisms_preserve_blocks():
    blocks = set(zero_sum_blocks())
    for phi in oracle.automorphisms():
        assert {frozenset(phi[c] for c in b) for b in blocks} == blocks


def test_prefix_rows():
    pruned = oracle._prefix_triples(False)
    full = oracle._prefix_triples(True)
    assert len(full) == 30 and len(pruned) == 6
    assert {tuple(r) for r in pruned} <= {tuple(r) for r in full}


def even_two_factor_exists(g):
    """3-edge-colorable iff some perfect matching leaves only even cycles."""
    nxg = g.to_networkx()
    for combo in itertools.combinations(range(g.m), g.n // 2):
        if not g.is_perfect_matching(EdgeSet(combo)):
            continue
        rest = nxg.copy()
        rest.remove_edges_from(g.edges[e] for e in combo)
        if all(len(c) % 2 == 0 for c in nx.connected_components(rest)):
            return True
    return False


@settings(max_examples=40, deadline=None)
@given(cubic_graphs_strategy(sizes=(4, 6, 8, 10, 12)))
def test_three_edge_coloring_matches_independent_check(g):
    col = oracle.three_edge_coloring(g.n, g.edges)
    assert (col is not None) == even_two_factor_exists(g)
    if col is not None:
        for v in range(g.n):
            assert len({col[e] for e in g.incidence[v]}) == 3


def test_snarks_are_not_3_colorable():
    for name, g in gen.named_snarks().items():
        assert not oracle.is_3_edge_colorable(g).colorable, name
        assert not even_two_factor_exists(g) if g.n <= 10 else True


@settings(max_examples=30, deadline=None)
@given(cubic_graphs_strategy())
def test_paranoid_and_pruned_agree(g):
    a = oracle.brute_force_z4z2(g)
    b = oracle.brute_force_z4z2(g, paranoid=True)
    assert a.colorable == b.colorable
    for v in (a, b):
        if v.colorable:
            assert verify(v.witness).ok


def test_bridge_blocks_coloring():
    g = bridged_pair()
    assert not oracle.brute_force_z4z2(g).colorable
    assert not oracle.brute_force_z4z2(g, paranoid=True).colorable
    assert oracle.characterization_search(g) is None


def test_budget_is_reported():
    with pytest.raises(BudgetExhausted):
        oracle.brute_force_z4z2(bridged_pair(), max_nodes=5)


def test_petersen_resistance_and_reduction():
    g = gen.petersen()
    assert oracle.resistance(g) == 2
    assert oracle.reduction_number(g) == 1
    assert oracle.resistance(gen.k4()) == 0
    assert oracle.reduction_number(gen.k4()) == 0


def test_characterization_witness_verifies():
    from z4z2color.coloring import construct_from

    for name, g in gen.named_snarks().items():
        if g.n > 20:
            continue
        w = oracle.characterization_search(g)
        assert w is not None and verify(construct_from(w)).ok


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
def test_pure_and_compiled_kernels_agree():
    import numpy as np

    for g in [gen.petersen(), gen.blanusa(1), gen.cube(), bridged_pair()]:
        eu, ev, inc = oracle._arrays(g.n, g.edges)
        prefix = oracle._prefix_triples(False)
        res = []
        for fn in (_kernels.py_search, _kernels.jit_search):
            out = np.zeros((3, g.m), np.int64)
            st, found, nodes = fn(eu, ev, inc, oracle.Z4Z2_ADD, oracle.Z4Z2_NEG, oracle.Z4Z2_PALETTE,
                                  True, False, prefix, 10**7, 3, out)
            res.append((int(st), int(found), int(nodes), out[:found].tolist()))
        assert res[0] == res[1]


def test_env_flag_selects_pure_backend():
    code = "from z4z2color import _kernels; print(_kernels.backend())"
    env = dict(os.environ, **{_kernels.DISABLE_ENV: "1"})
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
