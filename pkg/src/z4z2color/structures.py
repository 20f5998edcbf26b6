"""The reduced graph H = G - M and the path/loop structures living in it.

Given a 2-factor F and a matching M inside F, vertices left uncovered by M
keep degree 3 in H ("3-vertices"); all others drop to degree 2.  An F-path
joins two 3-vertices through 2-vertices and starts and ends with F-edges.
A family of vertex-disjoint F-paths covering every 3-vertex is an
F-matching; the edges of H it leaves behind split into cycles ("loops").
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BudgetExhausted, MalformedStructure, WrongVertexCount
from .factor import TwoFactor
from .graph import CubicGraph, EdgeSet

DEFAULT_SEARCH_NODES = 200_000


@dataclass(frozen=True, eq=False)
class MatchingInF:
    edges: EdgeSet
    factor: TwoFactor

    def __post_init__(self):
        g = self.factor.graph
        if not self.edges.issubset(self.factor.edge_set):
            raise ValueError("matching is not contained in the 2-factor")
        if not g.is_matching(self.edges):
            raise ValueError("edges are not pairwise disjoint")

    @cached_property
    def covered(self) -> frozenset[int]:
        return frozenset(self.factor.graph.vertices_of(self.edges))

    @property
    def is_maximum(self) -> bool:
        """Covers everything except exactly one vertex per odd cycle."""
        f = self.factor
        for i, c in enumerate(f.cycles):
            missed = sum(1 for v in c if v not in self.covered)
            if missed != len(c) % 2:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MatchingInF):
            return self.edges == other.edges and self.factor == other.factor
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.edges)


def cycle_matching(f: TwoFactor, idx: int, start: int) -> list[int]:
    """Maximum matching of cycle ``idx`` pairing positions (start+1, start+2), ...

    For an odd cycle the vertex at position ``start`` is left uncovered; for
    an even cycle ``start`` in {0, 1} only selects one of the two perfect
    matchings (position ``start`` is matched backwards).
    """
    c = f.cycles[idx]
    L = len(c)
    ce = f.cycle_edges[idx]
    if L % 2:
        # ce[j] joins c[j] and c[j+1]; skip c[start]
        return [ce[(start + 1 + 2 * k) % L] for k in range(L // 2)]
    return [ce[(start + 2 * k) % L] for k in range(L // 2)]


def iter_maximum_matchings(f: TwoFactor) -> Iterator[MatchingInF]:
    """All maximum matchings of F, odd cycles by uncovered vertex position."""
    choices = [range(len(c)) if len(c) % 2 else range(2) for c in f.cycles]
    for combo in itertools.product(*choices):
        es: list[int] = []
        for i, s in enumerate(combo):
            es.extend(cycle_matching(f, i, s))
        yield MatchingInF(EdgeSet(es), f)


@dataclass(frozen=True, eq=False)
class ReducedGraph:
    graph: CubicGraph
    factor: TwoFactor
    matching: MatchingInF
    edge_set: EdgeSet
    three_vertices: frozenset[int]
    two_vertices: frozenset[int]
    components: tuple[tuple[int, ...], ...]

    def incident(self, v: int) -> list[int]:
        return [e for e in self.graph.incidence[v] if e in self.edge_set]

    def in_f(self, e: int) -> bool:
        return e in self.factor.edge_set


def reduce(g: CubicGraph, f: TwoFactor, m: MatchingInF | EdgeSet) -> ReducedGraph:
    if isinstance(m, EdgeSet):
        m = MatchingInF(m, f)
    he = g.all_edges() - m.edges
    three = frozenset(v for v in range(g.n) if v not in m.covered)
    two = frozenset(range(g.n)) - three
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for e in he:
        u, v = g.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return ReducedGraph(g, f, m, he, three, two, tuple(comps))


@dataclass(frozen=True)
class FPath:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def end_edges(self) -> frozenset[int]:
        return frozenset((self.edges[0], self.edges[-1]))

    def canonical(self) -> "FPath":
        if self.vertices[-1] < self.vertices[0]:
            return FPath(self.vertices[::-1], self.edges[::-1])
        return self


@dataclass(frozen=True)
class FMatching:
    paths: tuple[FPath, ...]
    edge_set: EdgeSet
    simple: bool

    @property
    def end_edges(self) -> EdgeSet:
        return EdgeSet(e for p in self.paths for e in p.end_edges)


def is_simple_path(h: ReducedGraph, p: FPath) -> bool:
    odd = h.factor.odd_edges
    return all(e not in odd for e in p.edges[1:-1])


def make_f_matching(h: ReducedGraph, paths: Iterable[FPath]) -> FMatching:
    """Validate a family of F-paths against ``h`` and wrap it."""
    ps = tuple(sorted((p.canonical() for p in paths), key=lambda p: p.edges))
    used: set[int] = set()
    ends: set[int] = set()
    es: list[int] = []
    for p in ps:
        if len(p.vertices) != len(p.edges) + 1 or not p.edges or len(set(p.vertices)) != len(p.vertices):
            raise MalformedStructure(f"bad path {p}")
        a, b = p.ends
        if a not in h.three_vertices or b not in h.three_vertices:
            raise MalformedStructure(f"path {p} does not join two 3-vertices")
        if any(v not in h.two_vertices for v in p.vertices[1:-1]):
            raise MalformedStructure(f"path {p} has a 3-vertex in its interior")
        if not (h.in_f(p.edges[0]) and h.in_f(p.edges[-1])):
            raise MalformedStructure(f"path {p} has an end-edge outside F")
        for i, e in enumerate(p.edges):
            if e not in h.edge_set or set(h.graph.edges[e]) != {p.vertices[i], p.vertices[i + 1]}:
                raise MalformedStructure(f"path {p} leaves H")
        if used & set(p.vertices):
            raise MalformedStructure("paths are not vertex-disjoint")
        used.update(p.vertices)
        ends.update((a, b))
        es.extend(p.edges)
    if ends != set(h.three_vertices):
        raise MalformedStructure("F-matching does not cover every 3-vertex")
    return FMatching(ps, EdgeSet(es), all(is_simple_path(h, p) for p in ps))


def _walk(h: ReducedGraph, v: int, e: int) -> FPath:
    """Follow H from 3-vertex ``v`` along ``e`` through 2-vertices."""
    g = h.graph
    verts = [v]
    edges = [e]
    cur = g.other(e, v)
    while cur in h.two_vertices:
        verts.append(cur)
        a, b = h.incident(cur)
        e = b if a == edges[-1] else a
        edges.append(e)
        cur = g.other(e, cur)
    verts.append(cur)
    return FPath(tuple(verts), tuple(edges))


def candidate_f_paths(h: ReducedGraph, require_simple: bool = False) -> dict[int, list[FPath]]:
    """Every F-path starting at each 3-vertex, in canonical edge order."""
    out: dict[int, list[FPath]] = {v: [] for v in h.three_vertices}
    for v in sorted(h.three_vertices):
        for e in h.graph.incidence[v]:
            if not h.in_f(e):
                continue
            p = _walk(h, v, e)
            w = p.vertices[-1]
            if w == v or not h.in_f(p.edges[-1]):
                continue
            if require_simple and not is_simple_path(h, p):
                continue
            out[v].append(p)
    return out


def iter_f_matchings(
    h: ReducedGraph, require_simple: bool = False, budget: int | None = DEFAULT_SEARCH_NODES
) -> Iterator[FMatching]:
    """Enumerate every F-matching of ``h`` (complete backtracking).

    Each 2-vertex has degree 2 in H, so the path leaving a 3-vertex along a
    given F-edge is forced; the search only chooses which of the (at most
    two) candidate paths covers the lowest uncovered 3-vertex.
    """
    cands = candidate_f_paths(h, require_simple)
    order = sorted(h.three_vertices)
    if len(order) % 2:
        return
    taken: set[int] = set()
    chosen: list[FPath] = []
    nodes = 0

    def rec(i: int) -> Iterator[FMatching]:
        nonlocal nodes
        while i < len(order) and order[i] in taken:
            i += 1
        if i == len(order):
            paths = tuple(p.canonical() for p in chosen)
            es = EdgeSet(e for p in paths for e in p.edges)
            simple = all(is_simple_path(h, p) for p in paths)
            yield FMatching(tuple(sorted(paths, key=lambda p: p.edges)), es, simple)
            return
        v = order[i]
        for p in cands[v]:
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExhausted("F-matching search", nodes)
            w = p.vertices[-1]
            if w in taken:
                continue
            taken.update((v, w))
            chosen.append(p)
            yield from rec(i + 1)
            chosen.pop()
            taken.difference_update((v, w))

    yield from rec(0)


def find_f_matching(
    h: ReducedGraph, require_simple: bool = False, budget: int | None = DEFAULT_SEARCH_NODES
) -> FMatching | None:
    """First F-matching in canonical order, or None when none exists."""
    return next(iter_f_matchings(h, require_simple, budget), None)


@dataclass(frozen=True)
class Loop:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    three_count: int

    @property
    def three_even(self) -> bool:
        return self.three_count % 2 == 0


@dataclass(frozen=True)
class FComplement:
    loops: tuple[Loop, ...]

    @property
    def three_even(self) -> bool:
        return all(lp.three_even for lp in self.loops)

    @property
    def three_odd_loops(self) -> tuple[int, ...]:
        return tuple(i for i, lp in enumerate(self.loops) if not lp.three_even)

    @cached_property
    def edge_set(self) -> EdgeSet:
        return EdgeSet(e for lp in self.loops for e in lp.edges)

    def loop_of_edge(self) -> dict[int, int]:
        return {e: i for i, lp in enumerate(self.loops) for e in lp.edges}


def cycles_of_edges(g: CubicGraph, es: EdgeSet) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Split a 2-regular edge set into canonical (vertices, edges) cycles."""
    inc: dict[int, list[int]] = {}
    for e in es:
        for v in g.edges[e]:
            inc.setdefault(v, []).append(e)
    for v, lst in inc.items():
        if len(lst) != 2:
            raise MalformedStructure(f"vertex {v} has degree {len(lst)} in the remainder")
    done: set[int] = set()
    out = []
    for s in sorted(inc):
        if s in done:
            continue
        e0, e1 = inc[s]
        e = e0 if g.other(e0, s) < g.other(e1, s) else e1
        verts, edges = [s], []
        cur = s
        while True:
            done.add(cur)
            edges.append(e)
            cur = g.other(e, cur)
            if cur == s:
                break
            verts.append(cur)
            a, b = inc[cur]
            e = b if a == e else a
        out.append((tuple(verts), tuple(edges)))
    return out


def f_complement(h: ReducedGraph, fm: FMatching) -> FComplement:
    rest = h.edge_set - fm.edge_set
    loops = []
    for verts, edges in cycles_of_edges(h.graph, rest):
        inf = [h.in_f(e) for e in edges]
        if len(edges) % 2 or any(inf[i] == inf[i - 1] for i in range(len(inf))):
            raise MalformedStructure(f"loop {verts} does not alternate F and non-F edges")
        loops.append(Loop(verts, edges, sum(1 for v in verts if v in h.three_vertices)))
    on_loop = {v for lp in loops for v in lp.vertices}
    if not h.three_vertices <= on_loop:
        raise MalformedStructure("a 3-vertex lies on no loop")
    return FComplement(tuple(loops))


class MainComponent(enum.Enum):
    THETA = "theta"
    KAYAK_PADDLE = "kayak-paddle"
    OTHER = "other"


def classify_main_component(h: ReducedGraph) -> MainComponent:
    """Shape of the component of H holding its only two 3-vertices."""
    if len(h.three_vertices) != 2:
        raise WrongVertexCount(f"expected two 3-vertices, found {len(h.three_vertices)}")
    r1, r2 = sorted(h.three_vertices)
    hits = 0
    for e in h.incident(r1):
        p = _walk(h, r1, e)
        end = p.vertices[-1]
        if end == r2:
            hits += 1
        elif end != r1:
            return MainComponent.OTHER
    if hits == 3:
        return MainComponent.THETA
    if hits == 1:
        return MainComponent.KAYAK_PADDLE
    return MainComponent.OTHER
