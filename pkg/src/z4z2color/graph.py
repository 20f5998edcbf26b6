"""Simple cubic graphs with canonical edge indexing.

Vertices are ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v`` and
sorted lexicographically; the position of an edge in that list is its
canonical index, which every other module uses to refer to it.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

from .errors import (
    Disconnected,
    MultiEdgeCreated,
    NotAMatching,
    NotCubic,
    NotSimple,
    SelfLoopCreated,
)

Edge = tuple[int, int]


class EdgeSet:
    """Immutable set of canonical edge indices backed by an int bitmask."""

    __slots__ = ("mask",)

    def __init__(self, edges: Iterable[int] = ()):
        mask = 0
        for e in edges:
            if e < 0:
                raise ValueError(f"negative edge index {e}")
            mask |= 1 << e
        self.mask = mask

    @classmethod
    def from_mask(cls, mask: int) -> "EdgeSet":
        s = cls.__new__(cls)
        s.mask = mask
        return s

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and e >= 0 and bool(self.mask >> e & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet.from_mask(self.mask | other.mask)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet.from_mask(self.mask & other.mask)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet.from_mask(self.mask & ~other.mask)

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet.from_mask(self.mask ^ other.mask)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EdgeSet):
            return self.mask == other.mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: "EdgeSet") -> bool:
        # lexicographic order of the sorted index lists
        return self.tolist() < other.tolist()

    def issubset(self, other: "EdgeSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "EdgeSet") -> bool:
        return self.mask & other.mask == 0

    def tolist(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"EdgeSet({self.tolist()})"


class CubicGraph:
    """Immutable simple connected cubic graph.

    ``edges[i]`` is the i-th edge in canonical order and ``incidence[v]`` the
    sorted triple of edge indices at ``v``.
    """

    __slots__ = ("n", "edges", "incidence", "_index", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise NotSimple(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise NotSimple(f"parallel edge {a}")
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(norm):
            inc[u].append(i)
            inc[v].append(i)
        bad = [v for v in range(n) if len(inc[v]) != 3]
        if bad:
            raise NotCubic(f"vertex {bad[0]} has degree {len(inc[bad[0]])}")
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        self.incidence: tuple[tuple[int, int, int], ...] = tuple(tuple(x) for x in inc)  # type: ignore[misc]
        self._index = {e: i for i, e in enumerate(norm)}
        self._hash = hash((n, self.edges))
        if n == 0 or not _is_connected(n, norm):
            raise Disconnected("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incidence[v]]

    def all_edges(self) -> EdgeSet:
        return EdgeSet.from_mask((1 << self.m) - 1)

    def edge_set(self, pairs: Iterable[Sequence[int]]) -> EdgeSet:
        return EdgeSet(self.edge_index(p[0], p[1]) for p in pairs)

    def vertices_of(self, es: EdgeSet) -> set[int]:
        out: set[int] = set()
        for e in es:
            out.update(self.edges[e])
        return out

    def is_matching(self, es: EdgeSet) -> bool:
        seen: set[int] = set()
        for e in es:
            u, v = self.edges[e]
            if u in seen or v in seen:
                return False
            seen.add(u)
            seen.add(v)
        return True

    def is_perfect_matching(self, es: EdgeSet) -> bool:
        return len(es) * 2 == self.n and self.is_matching(es)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CubicGraph):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m})"


class SubgraphView:
    """An edge subset of a graph with its per-vertex degree table."""

    def __init__(self, graph: CubicGraph, edges: EdgeSet):
        self.graph = graph
        self.edges = edges
        deg = [0] * graph.n
        for e in edges:
            u, v = graph.edges[e]
            deg[u] += 1
            deg[v] += 1
        self.degree = tuple(deg)

    def incident(self, v: int) -> list[int]:
        return [e for e in self.graph.incidence[v] if e in self.edges]


def _is_connected(n: int, edges: Sequence[Edge]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def find_bridges(g: CubicGraph) -> EdgeSet:
    """Cut edges of ``g`` via an iterative lowpoint DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = []
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        # frames: (vertex, edge used to enter, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, i = stack[-1]
            if i < 3:
                stack[-1] = (v, pe, i + 1)
                e = g.incidence[v][i]
                if e == pe:
                    continue
                w = g.other(e, v)
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.append(pe)
    return EdgeSet(bridges)


def is_bridgeless(g: CubicGraph) -> bool:
    return not find_bridges(g)


def girth(g: CubicGraph) -> int:
    best = g.n + 1
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def edge_reduction(g: CubicGraph, removed: EdgeSet) -> CubicGraph:
    """Delete a matching and suppress every resulting degree-2 vertex.

    Surviving vertices keep their relative order.  Raises ``SelfLoopCreated``
    or ``MultiEdgeCreated`` when suppression would leave a non-simple graph.
    """
    if not g.is_matching(removed):
        raise NotAMatching("removed edges share a vertex")
    touched = g.vertices_of(removed)
    keep = [v for v in range(g.n) if v not in touched]
    if not keep:
        raise SelfLoopCreated("every vertex was suppressed")
    kept_edges = [e for e in range(g.m) if e not in removed]
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for e in kept_edges:
        u, v = g.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    new_edges: set[Edge] = set()
    done_dir: set[tuple[int, int]] = set()
    visited: set[int] = set()
    for v in keep:
        for w in adj[v]:
            if (v, w) in done_dir:
                continue
            prev, cur = v, w
            while cur in touched:
                visited.add(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            done_dir.add((v, w))
            done_dir.add((cur, prev))
            if cur == v:
                raise SelfLoopCreated(f"suppression creates a loop at {v}")
            e = (v, cur) if v < cur else (cur, v)
            if e in new_edges:
                raise MultiEdgeCreated(f"suppression creates a parallel edge {e}")
            new_edges.add(e)
    if visited != touched:
        raise SelfLoopCreated("a cycle of suppressed vertices collapses to a loop")
    relabel = {v: i for i, v in enumerate(keep)}
    return CubicGraph(len(keep), [(relabel[u], relabel[v]) for u, v in new_edges])
