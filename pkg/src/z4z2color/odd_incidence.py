"""Odd-cycle incidence graph and the maximum matchings it certifies.

Fix a perfect matching ``m_even`` of the even cycles of F.  In
``G - m_even`` the odd-cycle vertices keep degree 3 and every other vertex
has degree 2, so each odd-cycle vertex starts exactly one walk that leaves
its cycle along the perfect-matching edge and runs through 2-vertices until
it hits an odd-cycle vertex again.  Contracting the odd cycles turns those
walks into the edges of a multigraph on the odd cycles.

A perfect matching of that multigraph picks one walk end ``c_i`` per odd
cycle.  Leaving a cycle neighbour ``u_i`` of ``c_i`` uncovered and matching
the rest of the cycle gives a maximum matching M of F whose reduced graph
has the F-matching ``u_i c_i ... c_j u_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import NotPerfectOnEven
from .factor import TwoFactor
from .graph import CubicGraph, EdgeSet
from .structures import FMatching, FPath, MatchingInF, cycle_matching, make_f_matching, reduce


@dataclass(frozen=True)
class ConnectionPath:
    """A walk in G - m_even between vertices of two odd cycles."""

    cycles: tuple[int, int]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class OddCycleIncidenceGraph:
    factor: TwoFactor
    m_even: EdgeSet
    nodes: tuple[int, ...]  # indices of the odd cycles of F
    edges: tuple[ConnectionPath, ...]  # loops (same cycle at both ends) dropped

    def between(self, a: int, b: int) -> list[ConnectionPath]:
        key = (min(a, b), max(a, b))
        return [p for p in self.edges if p.cycles == key]

    def incident(self, a: int) -> list[ConnectionPath]:
        return [p for p in self.edges if a in p.cycles]


def even_matchings(f: TwoFactor) -> Iterator[EdgeSet]:
    """All perfect matchings of F_even, two per even cycle, canonical order."""
    evens = f.even_cycles
    for combo in itertools.product((0, 1), repeat=len(evens)):
        es: list[int] = []
        for idx, s in zip(evens, combo):
            es.extend(cycle_matching(f, idx, s))
        yield EdgeSet(es)


def build_k_odd(g: CubicGraph, f: TwoFactor, m_even: EdgeSet) -> OddCycleIncidenceGraph:
    even_vs = {v for i in f.even_cycles for v in f.cycles[i]}
    if not m_even.issubset(f.edge_set) or not g.is_matching(m_even) \
            or set(g.vertices_of(m_even)) != even_vs:
        raise NotPerfectOnEven("m_even is not a perfect matching of the even cycles of F")
    odd_vs = {v for i in f.odd_cycles for v in f.cycles[i]}
    h_odd = g.all_edges() - m_even
    seen_start: set[int] = set()
    paths: list[ConnectionPath] = []
    for c in sorted(odd_vs):
        if c in seen_start:
            continue
        # the one H_odd edge at c outside F_odd is its perfect-matching edge
        (e,) = [x for x in g.incidence[c] if x not in f.edge_set]
        verts, es = [c], [e]
        cur = g.other(e, c)
        while cur not in odd_vs:
            verts.append(cur)
            a, b = [x for x in g.incidence[cur] if x in h_odd]
            e = b if a == es[-1] else a
            es.append(e)
            cur = g.other(e, cur)
        verts.append(cur)
        seen_start.update((c, cur))
        ca, cb = f.cycle_of(c), f.cycle_of(cur)
        if ca == cb:
            continue
        if cb < ca:
            verts.reverse()
            es.reverse()
        paths.append(ConnectionPath((min(ca, cb), max(ca, cb)), tuple(verts), tuple(es)))
    paths.sort(key=lambda p: (p.cycles, p.edges))
    return OddCycleIncidenceGraph(f, m_even, f.odd_cycles, tuple(paths))


def iter_k_perfect_matchings(k: OddCycleIncidenceGraph) -> Iterator[tuple[ConnectionPath, ...]]:
    """Perfect matchings of the multigraph, lexicographically least path first."""
    chosen: list[ConnectionPath] = []
    free = set(k.nodes)

    def rec() -> Iterator[tuple[ConnectionPath, ...]]:
        if not free:
            yield tuple(chosen)
            return
        a = min(free)
        for p in k.incident(a):
            b = p.cycles[1] if p.cycles[0] == a else p.cycles[0]
            if b not in free:
                continue
            free.difference_update((a, b))
            chosen.append(p)
            yield from rec()
            chosen.pop()
            free.update((a, b))

    yield from rec()


@dataclass(frozen=True)
class DerivedMatching:
    matching: MatchingInF
    f_matching: FMatching
    k_matching: tuple[ConnectionPath, ...]
    uncovered: tuple[int, ...]


def _expand(g: CubicGraph, f: TwoFactor, m_even: EdgeSet, km: tuple[ConnectionPath, ...],
            u_pick: dict[int, int]) -> DerivedMatching:
    es = list(m_even)
    ends: dict[int, int] = {}
    for p in km:
        for c in p.ends:
            ends[f.cycle_of(c)] = c
    us: dict[int, int] = {}
    for idx in f.odd_cycles:
        c = ends[idx]
        cyc = f.cycles[idx]
        nb = sorted(f.f_neighbors(c))
        u = nb[u_pick[idx]]
        us[idx] = u
        es.extend(cycle_matching(f, idx, cyc.index(u)))
    m = MatchingInF(EdgeSet(es), f)
    h = reduce(g, f, m)
    fps = []
    for p in km:
        a, b = p.ends
        ua, ub = us[f.cycle_of(a)], us[f.cycle_of(b)]
        verts = (ua,) + p.vertices + (ub,)
        edges = (g.edge_index(ua, a),) + p.edges + (g.edge_index(b, ub),)
        fps.append(FPath(verts, edges))
    fm = make_f_matching(h, fps)
    return DerivedMatching(m, fm, km, tuple(us[i] for i in f.odd_cycles))


def iter_derived_matchings(g: CubicGraph, f: TwoFactor, m_even: EdgeSet,
                           k: OddCycleIncidenceGraph | None = None) -> Iterator[DerivedMatching]:
    """Every (K_odd perfect matching, neighbour choice) expansion in canonical order."""
    if k is None:
        k = build_k_odd(g, f, m_even)
    odd = f.odd_cycles
    for km in iter_k_perfect_matchings(k):
        for picks in itertools.product((0, 1), repeat=len(odd)):
            yield _expand(g, f, m_even, km, dict(zip(odd, picks)))


def derive_matching(g: CubicGraph, f: TwoFactor, m_even: EdgeSet,
                    k: OddCycleIncidenceGraph | None = None) -> DerivedMatching | None:
    """First maximum matching with a simple F-matching, or None if K_odd has no perfect matching."""
    return next(iter_derived_matchings(g, f, m_even, k), None)
