"""Perfect matchings, 2-factors and oddness."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .errors import NoPerfectMatching, NotPerfectMatching
from .graph import CubicGraph, EdgeSet

#: Above this many vertices enumeration is capped unless a limit is given.
FULL_ENUMERATION_MAX_N = 30
DEFAULT_PM_BUDGET = 20000


def default_pm_limit(g: CubicGraph) -> int | None:
    return None if g.n <= FULL_ENUMERATION_MAX_N else DEFAULT_PM_BUDGET


def enumerate_perfect_matchings(g: CubicGraph, limit: int | None = None) -> Iterator[EdgeSet]:
    """Yield perfect matchings in lexicographic order of their index lists.

    Branches on the lowest uncovered vertex and tries its edges in index
    order, which is exactly lexicographic order.  Raises NoPerfectMatching
    if the search space is exhausted without a single match.
    """
    covered = [False] * g.n
    chosen: list[int] = []
    found = 0

    def rec(v: int) -> Iterator[EdgeSet]:
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            yield EdgeSet(chosen)
            return
        for e in g.incidence[v]:
            w = g.other(e, v)
            if covered[w]:
                continue
            covered[v] = covered[w] = True
            chosen.append(e)
            yield from rec(v + 1)
            chosen.pop()
            covered[v] = covered[w] = False

    for pm in rec(0):
        found += 1
        yield pm
        if limit is not None and found >= limit:
            return
    if not found:
        raise NoPerfectMatching("graph has no perfect matching")


@dataclass(frozen=True, eq=False)
class TwoFactor:
    """Spanning 2-regular subgraph ``E(G) - pm`` as canonical vertex cycles."""

    graph: CubicGraph
    matching: EdgeSet
    edge_set: EdgeSet
    cycles: tuple[tuple[int, ...], ...]
    _cycle_of: tuple[int, ...] = field(repr=False)

    def cycle_of(self, v: int) -> int:
        return self._cycle_of[v]

    @cached_property
    def odd_cycles(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cycles) if len(c) % 2)

    @cached_property
    def even_cycles(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cycles) if len(c) % 2 == 0)

    @property
    def odd_count(self) -> int:
        return len(self.odd_cycles)

    @cached_property
    def cycle_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices of each cycle in traversal order (c[i] -> c[i+1])."""
        g = self.graph
        return tuple(
            tuple(g.edge_index(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
            for c in self.cycles
        )

    @cached_property
    def odd_edges(self) -> EdgeSet:
        return EdgeSet(e for i in self.odd_cycles for e in self.cycle_edges[i])

    def f_neighbors(self, v: int) -> tuple[int, int]:
        c = self.cycles[self._cycle_of[v]]
        i = c.index(v)
        return c[i - 1], c[(i + 1) % len(c)]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TwoFactor):
            return self.graph == other.graph and self.edge_set == other.edge_set
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.graph, self.edge_set))


def two_factor(g: CubicGraph, pm: EdgeSet) -> TwoFactor:
    if not g.is_perfect_matching(pm):
        raise NotPerfectMatching("edge set is not a perfect matching")
    fe = g.all_edges() - pm
    nbr: list[list[int]] = [[] for _ in range(g.n)]
    for e in fe:
        u, v = g.edges[e]
        nbr[u].append(v)
        nbr[v].append(u)
    cyc_of = [-1] * g.n
    cycles = []
    for s in range(g.n):
        if cyc_of[s] >= 0:
            continue
        k = len(cycles)
        walk = [s]
        cyc_of[s] = k
        prev, cur = s, min(nbr[s])
        while cur != s:
            walk.append(cur)
            cyc_of[cur] = k
            a, b = nbr[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(walk))
    return TwoFactor(g, pm, fe, tuple(cycles), tuple(cyc_of))


@dataclass(frozen=True)
class OddnessWitness:
    factor: TwoFactor
    oddness: int
    proven_minimal: bool

    def __iter__(self):
        # unpacks as (factor, oddness)
        return iter((self.factor, self.oddness))


def oddness_witness(g: CubicGraph, limit: int | None = None) -> OddnessWitness:
    """2-factor with the fewest odd cycles among the scanned perfect matchings."""
    if limit is None:
        limit = default_pm_limit(g)
    best: TwoFactor | None = None
    scanned = 0
    for pm in enumerate_perfect_matchings(g, limit):
        scanned += 1
        f = two_factor(g, pm)
        if best is None or f.odd_count < best.odd_count:
            best = f
            if best.odd_count == 0:
                return OddnessWitness(best, 0, True)
    assert best is not None
    exhausted = limit is None or scanned < limit
    return OddnessWitness(best, best.odd_count, exhausted)


def oddness(g: CubicGraph) -> int:
    return oddness_witness(g).oddness
