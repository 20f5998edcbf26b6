"""Independent ground truth by exhaustive search.

Nothing here uses the structural machinery: colorability is decided by
plain backtracking over edge colors, so it can be used to check the
constructive pipeline.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .coloring import NONZERO, EdgeColoring, GroupElement, Witness, verify, zero_sum_blocks
from .errors import BudgetExhausted, GraphError, NoPerfectMatching
from .factor import enumerate_perfect_matchings, two_factor
from .graph import CubicGraph, EdgeSet, edge_reduction
from .structures import MatchingInF, f_complement, iter_f_matchings, reduce

DEFAULT_ORACLE_NODES = 50_000_000
DEFAULT_CHARACTERIZATION_NODES = 5_000_000


@dataclass
class OracleVerdict:
    colorable: bool
    witness: object = None
    nodes: int = 0
    seconds: float = 0.0
    stats: dict = field(default_factory=dict)


# --- group tables over kernel codes (code = 2x + y) -------------------------

def _z4z2_tables() -> tuple[np.ndarray, np.ndarray]:
    add = np.zeros((8, 8), np.int64)
    neg = np.zeros(8, np.int64)
    for a in range(8):
        ga = GroupElement.from_code(a)
        neg[a] = (-ga).code
        for b in range(8):
            add[a, b] = (ga + GroupElement.from_code(b)).code
    return add, neg


def _klein_tables() -> tuple[np.ndarray, np.ndarray]:
    add = np.array([[a ^ b for b in range(4)] for a in range(4)], np.int64)
    return add, np.arange(4, dtype=np.int64)


Z4Z2_ADD, Z4Z2_NEG = _z4z2_tables()
KLEIN_ADD, KLEIN_NEG = _klein_tables()
Z4Z2_PALETTE = np.arange(1, 8, dtype=np.int64)
KLEIN_PALETTE = np.array([1, 2, 3], np.int64)


def automorphisms() -> list[dict[GroupElement, GroupElement]]:
    """All automorphisms of Z4 x Z2, found by brute force over generator images."""
    out = []
    for a in NONZERO:
        for b in NONZERO:
            phi = {}
            for x in range(4):
                for y in range(2):
                    img = GroupElement(0, 0)
                    for _ in range(x):
                        img = img + a
                    for _ in range(y):
                        img = img + b
                    phi[GroupElement(x, y)] = img
            # well-defined homomorphism needs 4a = 0 and 2b = 0; bijective
            if (a + a + a + a).is_zero and (b + b).is_zero and len(set(phi.values())) == 8:
                out.append(phi)
    return out


@lru_cache(maxsize=None)
def _prefix_triples(paranoid: bool) -> np.ndarray:
    """Allowed colorings of the three edges at vertex 0.

    Every valid triple is an ordering of a zero-sum block.  Automorphisms of
    the group map colorings to colorings, so it suffices to try one triple
    per automorphism orbit (the lexicographically least by code).
    """
    triples = [
        tuple(t) for blk in zero_sum_blocks() for t in itertools.permutations(sorted(blk))
    ]
    if paranoid:
        rows = triples
    else:
        auts = automorphisms()
        rows = []
        for t in triples:
            codes = tuple(c.code for c in t)
            best = min(tuple(phi[c].code for c in t) for phi in auts)
            if codes == best:
                rows.append(t)
    arr = np.array([[c.code for c in t] for t in rows], np.int64)
    return arr[np.lexsort(arr.T[::-1])]


def _arrays(n: int, edges: Sequence[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    eu = np.array([u for u, _ in edges], np.int64)
    ev = np.array([v for _, v in edges], np.int64)
    inc = np.full((n, 3), -1, np.int64)
    fill = [0] * n
    for i, (u, v) in enumerate(edges):
        for w in (u, v):
            if fill[w] >= 3:
                raise GraphError(f"vertex {w} has degree > 3")
            inc[w, fill[w]] = i
            fill[w] += 1
    return eu, ev, inc


def _run(eu, ev, inc, add, neg, palette, zero_sum, interchangeable, prefix,
         max_nodes, max_solutions, what):
    out = np.zeros((max(max_solutions, 1), eu.shape[0]), np.int64)
    status, found, nodes = _kernels.search(
        eu, ev, inc, add, neg, palette, zero_sum, interchangeable, prefix,
        max_nodes, max_solutions, out,
    )
    if status == _kernels.STATUS_BUDGET:
        raise BudgetExhausted(what, int(nodes))
    return out[:found], int(nodes)


def iter_z4z2_codes(g: CubicGraph, limit: int, paranoid: bool = False,
                    max_nodes: int = DEFAULT_ORACLE_NODES) -> tuple[np.ndarray, int]:
    eu, ev, inc = _arrays(g.n, g.edges)
    assert tuple(g.incidence[0]) == (0, 1, 2)
    prefix = _prefix_triples(paranoid)
    return _run(eu, ev, inc, Z4Z2_ADD, Z4Z2_NEG, Z4Z2_PALETTE, True, False, prefix,
                max_nodes, limit, "Z4xZ2 brute force")


def brute_force_z4z2(g: CubicGraph, paranoid: bool = False,
                     max_nodes: int = DEFAULT_ORACLE_NODES) -> OracleVerdict:
    """Decide proper Z4 x Z2-colorability by exhaustive backtracking."""
    t0 = time.perf_counter()
    sols, nodes = iter_z4z2_codes(g, 1, paranoid, max_nodes)
    witness = None
    if len(sols):
        witness = EdgeColoring.from_codes(g, sols[0])
        assert verify(witness).ok
    return OracleVerdict(bool(len(sols)), witness, nodes, time.perf_counter() - t0,
                         {"paranoid": paranoid, "backend": _kernels.backend()})


def z4z2_colorings(g: CubicGraph, limit: int, paranoid: bool = True,
                   max_nodes: int = DEFAULT_ORACLE_NODES) -> list[EdgeColoring]:
    """Up to ``limit`` distinct colorings in search order."""
    sols, _ = iter_z4z2_codes(g, limit, paranoid, max_nodes)
    return [EdgeColoring.from_codes(g, row) for row in sols]


def three_edge_coloring(n: int, edges: Sequence[tuple[int, int]],
                        max_nodes: int = DEFAULT_ORACLE_NODES) -> list[int] | None:
    """Proper 3-edge-coloring (colors 0..2) of a graph of max degree 3, or None."""
    if not edges:
        return []
    eu, ev, inc = _arrays(n, edges)
    prefix = np.zeros((1, 0), np.int64)
    sols, _ = _run(eu, ev, inc, KLEIN_ADD, KLEIN_NEG, KLEIN_PALETTE, False, True, prefix,
                   max_nodes, 1, "3-edge-coloring")
    if not len(sols):
        return None
    return [int(c) - 1 for c in sols[0]]


def is_3_edge_colorable(g: CubicGraph, max_nodes: int = DEFAULT_ORACLE_NODES) -> OracleVerdict:
    t0 = time.perf_counter()
    col = three_edge_coloring(g.n, g.edges, max_nodes)
    witness = None
    if col is not None:
        witness = [EdgeSet(e for e in range(g.m) if col[e] == k) for k in range(3)]
    return OracleVerdict(col is not None, witness, 0, time.perf_counter() - t0)


def _all_matchings_of(g: CubicGraph, es: EdgeSet) -> Iterator[EdgeSet]:
    """Every matching inside ``es`` in lexicographic order (include-first)."""
    order = list(es)
    used: set[int] = set()
    chosen: list[int] = []

    def rec(i: int) -> Iterator[EdgeSet]:
        if i == len(order):
            yield EdgeSet(chosen)
            return
        e = order[i]
        u, v = g.edges[e]
        if u not in used and v not in used:
            used.update((u, v))
            chosen.append(e)
            yield from rec(i + 1)
            chosen.pop()
            used.difference_update((u, v))
        yield from rec(i + 1)

    yield from rec(0)


def characterization_search(g: CubicGraph, max_nodes: int = DEFAULT_CHARACTERIZATION_NODES,
                            pm_limit: int | None = None) -> Witness | None:
    """First (F, M, F-matching, F-complement) witness with a 3-even complement.

    Exhaustive over perfect matchings, matchings inside each 2-factor, and
    F-matchings of each reduced graph.  None means no witness exists.
    """
    nodes = 0
    try:
        for pm in enumerate_perfect_matchings(g, pm_limit):
            f = two_factor(g, pm)
            for mset in _all_matchings_of(g, f.edge_set):
                nodes += 1
                if nodes > max_nodes:
                    raise BudgetExhausted("characterization search", nodes)
                m = MatchingInF(mset, f)
                h = reduce(g, f, m)
                for fm in iter_f_matchings(h, budget=None):
                    nodes += 1
                    fc = f_complement(h, fm)
                    if fc.three_even:
                        return Witness(f, m, fm, fc)
    except NoPerfectMatching:
        return None
    return None


def resistance(g: CubicGraph, max_subsets: int = 2_000_000) -> int:
    """Fewest edge deletions leaving a 3-edge-colorable graph."""
    tried = 0
    for k in range(g.m + 1):
        for removed in itertools.combinations(range(g.m), k):
            tried += 1
            if tried > max_subsets:
                raise BudgetExhausted("resistance", tried)
            rm = set(removed)
            rest = [g.edges[e] for e in range(g.m) if e not in rm]
            if three_edge_coloring(g.n, rest) is not None:
                return k
    raise AssertionError("unreachable: the empty graph is colorable")


def _matchings_of_size(g: CubicGraph, k: int) -> Iterator[tuple[int, ...]]:
    for combo in itertools.combinations(range(g.m), k):
        seen: set[int] = set()
        ok = True
        for e in combo:
            u, v = g.edges[e]
            if u in seen or v in seen:
                ok = False
                break
            seen.update((u, v))
        if ok:
            yield combo


def reduction_number(g: CubicGraph, max_subsets: int = 2_000_000) -> int:
    """Fewest matching edges whose reduction yields a 3-edge-colorable graph.

    Reductions that would create a loop, a parallel edge, or a disconnected
    graph are skipped.
    """
    if three_edge_coloring(g.n, g.edges) is not None:
        return 0
    tried = 0
    for k in range(1, g.n // 2 + 1):
        for combo in _matchings_of_size(g, k):
            tried += 1
            if tried > max_subsets:
                raise BudgetExhausted("reduction number", tried)
            try:
                r = edge_reduction(g, EdgeSet(combo))
            except GraphError:
                continue
            if three_edge_coloring(r.n, r.edges) is not None:
                return k
    raise BudgetExhausted("reduction number: no valid reduction found", tried)
