"""Named cubic graphs, permutation graphs and random corpora.

Every construction uses a fixed labeling so certificates are reproducible.

Permutation graph on ``n``: outer cycle ``0..n-1``, inner cycle
``n..2n-1`` (``n+i`` adjacent to ``n+i+1``), spokes ``i -- n+pi(i)``.
``pi(i) = 2i mod 5`` gives the Petersen graph.  Both Blanusa snarks are
permutation graphs on n = 9; the permutations below were found by an
exhaustive search and identified by automorphism group order (8 for the
first snark, 4 for the second).

Flower snark J_k: vertices ``a_i, b_i, c_i, d_i`` numbered ``4i + (0..3)``;
``a_i`` is joined to ``b_i, c_i, d_i``; the ``b_i`` form a k-cycle and the
``c``/``d`` vertices form one 2k-cycle ``c_0 .. c_{k-1} d_0 .. d_{k-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadParameter, GraphError, NotSimple
from .factor import TwoFactor, two_factor
from .graph import CubicGraph, EdgeSet

PETERSEN_PERMUTATION = (0, 2, 4, 1, 3)
BLANUSA_PERMUTATIONS = {
    1: (0, 2, 4, 1, 6, 8, 5, 7, 3),
    2: (0, 2, 4, 1, 3, 6, 8, 5, 7),
}


@dataclass(frozen=True)
class PermutationSpec:
    n: int
    pi: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise BadParameter("cycle length must be at least 3")
        if sorted(self.pi) != list(range(self.n)):
            raise BadParameter(f"{self.pi} is not a permutation of 0..{self.n - 1}")


@dataclass(frozen=True)
class PermutationGraph:
    graph: CubicGraph
    spec: PermutationSpec
    factor: TwoFactor  # the two defining n-cycles


def permutation_edges(spec: PermutationSpec) -> list[tuple[int, int]]:
    n, pi = spec.n, spec.pi
    out = []
    for i in range(n):
        out.append((i, (i + 1) % n))
        out.append((n + i, n + (i + 1) % n))
        out.append((i, n + pi[i]))
    return out


def permutation_graph(spec: PermutationSpec) -> PermutationGraph:
    edges = permutation_edges(spec)
    if len({tuple(sorted(e)) for e in edges}) != len(edges):
        raise NotSimple("permutation graph would have parallel edges")
    g = CubicGraph(2 * spec.n, edges)
    spokes = EdgeSet(g.edge_index(i, spec.n + spec.pi[i]) for i in range(spec.n))
    return PermutationGraph(g, spec, two_factor(g, spokes))


def petersen() -> CubicGraph:
    return permutation_graph(PermutationSpec(5, PETERSEN_PERMUTATION)).graph


def blanusa(which: int) -> CubicGraph:
    if which not in BLANUSA_PERMUTATIONS:
        raise BadParameter("which must be 1 or 2")
    return permutation_graph(PermutationSpec(9, BLANUSA_PERMUTATIONS[which])).graph


def flower(k: int) -> CubicGraph:
    if k < 3 or k % 2 == 0:
        raise BadParameter("flower snarks need an odd k >= 3")
    a, b, c, d = (lambda i: 4 * i), (lambda i: 4 * i + 1), (lambda i: 4 * i + 2), (lambda i: 4 * i + 3)
    edges = []
    for i in range(k):
        j = (i + 1) % k
        edges += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(j))]
        if i < k - 1:
            edges += [(c(i), c(j)), (d(i), d(j))]
    edges += [(c(k - 1), d(0)), (d(k - 1), c(0))]
    return CubicGraph(4 * k, edges)


def k4() -> CubicGraph:
    return CubicGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> CubicGraph:
    return CubicGraph(6, [(i, j) for i in range(3) for j in range(3, 6)])


def prism(n: int = 3) -> CubicGraph:
    return permutation_graph(PermutationSpec(n, tuple(range(n)))).graph


def cube() -> CubicGraph:
    return CubicGraph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def controls() -> dict[str, CubicGraph]:
    """Small 3-edge-colorable graphs."""
    return {"K4": k4(), "K3,3": k33(), "prism": prism(3), "Q3": cube()}


def named_snarks() -> dict[str, CubicGraph]:
    return {
        "petersen": petersen(),
        "blanusa1": blanusa(1),
        "blanusa2": blanusa(2),
        "flower5": flower(5),
        "flower7": flower(7),
    }


def truncate_vertex(g: CubicGraph, v: int) -> CubicGraph:
    """Replace vertex ``v`` by a triangle (new vertices ``v, n, n+1``).

    Preserves cubicity, bridgelessness and 3-edge-colorability status, so it
    turns a snark into a larger snark of girth 3.
    """
    n = g.n
    ends = [g.other(e, v) for e in g.incidence[v]]
    corners = [v, n, n + 1]
    edges = [g.edges[e] for e in range(g.m) if v not in g.edges[e]]
    edges += [(corners[i], ends[i]) for i in range(3)]
    edges += [(v, n), (v, n + 1), (n, n + 1)]
    return CubicGraph(n + 2, edges)


def _is_3_colorable(g: CubicGraph) -> bool:
    from .oracle import three_edge_coloring  # local: oracle imports this module's siblings

    return three_edge_coloring(g.n, g.edges) is not None


def random_permutation_snarks(count: int, seed: int = 0, sizes: Sequence[int] = (5, 7, 9, 11, 13),
                              max_tries: int = 200_000) -> list[PermutationGraph]:
    """Distinct labeled permutation snarks by seeded rejection sampling.

    Sizes are cycled in order; a size that keeps failing is skipped after
    its share of attempts, so sizes where no permutation snark exists do
    not stall the sampler.
    """
    rng = random.Random(seed)
    out: list[PermutationGraph] = []
    seen: set[tuple[int, ...]] = set()
    per_size = max(1, max_tries // max(1, len(sizes)))
    tries = {n: 0 for n in sizes}
    k = 0
    while len(out) < count:
        live = [n for n in sizes if tries[n] < per_size]
        if not live:
            break
        n = live[k % len(live)]
        k += 1
        tries[n] += 1
        pi = list(range(n))
        rng.shuffle(pi)
        key = (n, *pi)
        if key in seen:
            continue
        seen.add(key)
        try:
            pg = permutation_graph(PermutationSpec(n, tuple(pi)))
        except GraphError:
            continue
        if not _is_3_colorable(pg.graph):
            out.append(pg)
    return out


def random_cubic_graphs(count: int, sizes: Sequence[int], seed: int = 0) -> Iterator[CubicGraph]:
    """Connected simple cubic graphs from networkx's random regular generator."""
    import networkx as nx

    rng = random.Random(seed)
    made = 0
    while made < count:
        n = sizes[made % len(sizes)]
        g = nx.random_regular_graph(3, n, seed=rng.randrange(2**31))
        if not nx.is_connected(g):
            continue
        made += 1
        yield CubicGraph(n, list(g.edges()))


def by_name(spec: str) -> CubicGraph:
    """``petersen``, ``blanusa1``, ``flower:7``, ``perm:0,2,4,1,3``, ``prism:5`` ..."""
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name == "petersen":
        return petersen()
    if name in ("blanusa1", "blanusa2"):
        return blanusa(int(name[-1]))
    if name == "blanusa":
        return blanusa(int(arg or 1))
    if name == "flower" or (name.startswith("flower") and name[6:].isdigit()):
        return flower(int(name[6:] or arg or 5))
    if name == "prism":
        return prism(int(arg or 3))
    if name in ("k4", "k33", "q3", "cube"):
        return {"k4": k4, "k33": k33, "q3": cube, "cube": cube}[name]()
    if name == "truncated-petersen":
        g = petersen()
        for k in range(int(arg or 1)):
            g = truncate_vertex(g, k)
        return g
    if name == "perm":
        pi = tuple(int(x) for x in arg.split(","))
        return permutation_graph(PermutationSpec(len(pi), pi)).graph
    raise BadParameter(f"unknown generator {spec!r}")
