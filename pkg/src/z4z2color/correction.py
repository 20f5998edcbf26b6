"""Repairing a matching whose F-complement has 3-odd loops.

Setting: F a 2-factor, M a matching in F, an F-matching P of H = G - M and
its loops.  Some loops hold an odd number of 3-vertices.  The repair works
on the components of F minus the end-edges of P (they alternate between M
and F - M) and on the bipartite graph B joining each such component to the
loops and paths it shares an edge with.

3-odd loops are paired up inside components of B with the path-nodes
removed, joined by B-paths, and the union is reduced to its symmetric
difference.  On each component C the edges of that union select one F-edge
per incident loop; selected edges are paired consecutively along C and the
stretch of C strictly between a pair (an M-path) is flipped: its M-edges
leave the matching and its edges lying on P enter it.  Each selected edge
puts one new 3-vertex on its loop, flipped loop edges add two, so exactly
the 3-odd loops change parity.

Every step of that argument is re-checked on the result (``claims`` in the
returned report) instead of being trusted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .coloring import Certificate, EdgeColoring, Witness, construct, make_certificate, verify
from .errors import ClaimViolated, MalformedStructure, NormalizationFailed, NotAnMPath, RewiredNotAMatching
from .factor import TwoFactor
from .graph import CubicGraph, EdgeSet
from .structures import (
    FComplement,
    FMatching,
    FPath,
    MatchingInF,
    cycles_of_edges,
    f_complement,
    make_f_matching,
    reduce,
)

# B-node keys: ("C", i) for components, ("L", i) for loops, ("P", i) for paths
Node = tuple[str, int]


@dataclass(frozen=True)
class Component:
    """A path or cycle of F - E_P; ``edges[j]`` joins ``vertices[j]`` and ``vertices[j+1]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    is_cycle: bool

    def position(self) -> dict[int, int]:
        return {e: j for j, e in enumerate(self.edges)}


@dataclass(frozen=True)
class ComponentFamily:
    components: tuple[Component, ...]
    end_edges: EdgeSet

    def component_of_edge(self) -> dict[int, int]:
        return {e: i for i, c in enumerate(self.components) for e in c.edges}


@dataclass
class LoopCycleIncidenceGraph:
    """Bipartite: components on one side, loops and F-paths on the other."""

    n_components: int
    n_loops: int
    n_paths: int
    shared: dict[tuple[Node, Node], tuple[int, ...]]  # (C-node, L/P-node) -> shared edges

    def neighbors(self, x: Node) -> list[Node]:
        out = []
        for c, o in self.shared:
            if c == x:
                out.append(o)
            elif o == x:
                out.append(c)
        return sorted(out)

    def selected_edge(self, c: Node, o: Node) -> int:
        return self.shared[(c, o)][0]


@dataclass(frozen=True)
class Infeasible:
    reason: str
    component: tuple[Node, ...] = ()


@dataclass
class PathFamily:
    """Edge-disjoint B-trails joining 3-odd loops, with per-component pairings."""

    trails: list[list[Node]]
    edges: frozenset[tuple[Node, Node]]
    pairs: dict[int, list[tuple[int, int]]]  # component -> consecutive selected-edge pairs


@dataclass(frozen=True)
class QFamily:
    paths: dict[int, list[tuple[int, ...]]]  # component -> M-paths as edge tuples
    edge_set: EdgeSet


@dataclass
class CorrectionReport:
    """Outcome of one repair.

    ``claims`` records each re-checked step of a non-trivial repair:

    - ``odd_ends``: the odd-degree nodes of the B-path union are exactly the 3-odd loops
    - ``no_interlacing``: selected pairs never separate each other on a component
    - ``m_paths``: every stretch between paired edges is an M-path
    - ``matching``: the rewired edge set is still a matching inside F
    - ``keeps_three_vertices``: every old 3-vertex is still a 3-vertex
    - ``keeps_loop_edges``: every loop edge survives in H*
    - ``new_three_on_loops``: new 3-vertices lie on loops only
    - ``splits_into_paths``: H* minus the loop edges is a family of F-paths
    - ``same_loops``: the F-complement of the new paths has the same loops
    - ``three_even``: the new F-complement is 3-even
    - ``parity``: new 3-vertices on each loop match its degree in the union, mod 2
    """

    certificate: Certificate | None = None
    infeasible: Infeasible | None = None
    claims: dict[str, bool] = field(default_factory=dict)
    nontrivial: bool = False
    witness: Witness | None = None
    coloring: EdgeColoring | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "nontrivial": self.nontrivial,
            "claims": dict(self.claims),
            "infeasible": None if self.infeasible is None else self.infeasible.reason,
            **self.details,
        }


# --- B --------------------------------------------------------------------

def build_components(g: CubicGraph, f: TwoFactor, m: MatchingInF, fm: FMatching) -> ComponentFamily:
    ep = fm.end_edges
    rest = f.edge_set - ep
    inc: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for e in rest:
        for v in g.edges[e]:
            inc[v].append(e)
    seen: set[int] = set()
    comps: list[Component] = []
    # paths first from their lower end, then remaining cycles
    for s in range(g.n):
        if s in seen or len(inc[s]) != 1:
            continue
        verts, edges = [s], []
        cur, e = s, inc[s][0]
        while True:
            edges.append(e)
            seen.add(cur)
            cur = g.other(e, cur)
            verts.append(cur)
            nxt = [d for d in inc[cur] if d != e]
            if not nxt:
                break
            e = nxt[0]
        seen.add(cur)
        comps.append(Component(tuple(verts), tuple(edges), False))
    covered = {e for c in comps for e in c.edges}
    left = EdgeSet(e for e in rest if e not in covered)
    for verts, edges in cycles_of_edges(g, left):
        comps.append(Component(verts, edges, True))
    comps.sort(key=lambda c: min(c.vertices))
    for c in comps:
        flags = [e in m.edges for e in c.edges]
        bad = any(flags[j] == flags[j - 1] for j in range(1, len(flags)))
        if c.is_cycle and flags and flags[0] == flags[-1]:
            bad = True
        if bad:
            raise MalformedStructure(f"component {c.vertices} does not alternate M / F-M")
    return ComponentFamily(tuple(comps), ep)


def build_B(g: CubicGraph, f: TwoFactor, m: MatchingInF, fm: FMatching,
            fc: FComplement) -> tuple[ComponentFamily, LoopCycleIncidenceGraph]:
    cf = build_components(g, f, m, fm)
    owner: dict[int, Node] = {}
    for i, lp in enumerate(fc.loops):
        for e in lp.edges:
            owner[e] = ("L", i)
    for i, p in enumerate(fm.paths):
        for e in p.edges:
            owner[e] = ("P", i)
    shared: dict[tuple[Node, Node], list[int]] = {}
    for ci, c in enumerate(cf.components):
        for e in c.edges:
            o = owner.get(e)
            if o is not None:
                shared.setdefault((("C", ci), o), []).append(e)
    b = LoopCycleIncidenceGraph(
        len(cf.components), len(fc.loops), len(fm.paths),
        {k: tuple(sorted(v)) for k, v in sorted(shared.items())},
    )
    return cf, b


# --- pairing 3-odd loops ----------------------------------------------------

def _components_without_paths(b: LoopCycleIncidenceGraph) -> list[list[Node]]:
    nodes = [("C", i) for i in range(b.n_components)] + [("L", i) for i in range(b.n_loops)]
    adj: dict[Node, list[Node]] = {x: [] for x in nodes}
    for c, o in b.shared:
        if o[0] == "L":
            adj[c].append(o)
            adj[o].append(c)
    seen: set[Node] = set()
    out = []
    for s in nodes:
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _shortest_path(b: LoopCycleIncidenceGraph, s: Node, t: Node) -> list[Node]:
    adj: dict[Node, list[Node]] = {}
    for c, o in b.shared:
        if o[0] == "L":
            adj.setdefault(c, []).append(o)
            adj.setdefault(o, []).append(c)
    for v in adj.values():
        v.sort()
    parent: dict[Node, Node | None] = {s: None}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == t:
            break
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                q.append(y)
    path = [t]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    return path[::-1]


def check_hypothesis(b: LoopCycleIncidenceGraph, fc: FComplement) -> list[list[Node]] | Infeasible:
    """Pair 3-odd loops inside each component of B minus the path-nodes.

    Returns the connecting B-paths, or Infeasible naming a component with an
    odd number of 3-odd loops.
    """
    odd = set(fc.three_odd_loops)
    key = {i: min(lp.vertices) for i, lp in enumerate(fc.loops)}
    paths = []
    for comp in _components_without_paths(b):
        lo = sorted((x[1] for x in comp if x[0] == "L" and x[1] in odd), key=lambda i: key[i])
        if len(lo) % 2:
            return Infeasible(f"component holds {len(lo)} 3-odd loops", tuple(comp))
        for a, c in zip(lo[::2], lo[1::2]):
            paths.append(_shortest_path(b, ("L", a), ("L", c)))
    return paths


# --- B-paths: symmetric difference and non-interlaced pairing --------------

def _bedge(x: Node, y: Node) -> tuple[Node, Node]:
    return (x, y) if x[0] == "C" else (y, x)


def symmetric_difference(raw: list[list[Node]]) -> frozenset[tuple[Node, Node]]:
    acc: set[tuple[Node, Node]] = set()
    for p in raw:
        for x, y in zip(p, p[1:]):
            acc ^= {_bedge(x, y)}
    return frozenset(acc)


def odd_degree_nodes(edges) -> set[Node]:
    deg: dict[Node, int] = {}
    for c, o in edges:
        deg[c] = deg.get(c, 0) + 1
        deg[o] = deg.get(o, 0) + 1
    return {x for x, d in deg.items() if d % 2}


def _consecutive_pairs(comp: Component, selected: list[int]) -> list[tuple[int, int]]:
    pos = comp.position()
    order = sorted(selected, key=lambda e: pos[e])
    return [(order[k], order[k + 1]) for k in range(0, len(order), 2)]


def interlaced(comp: Component, pairs: list[tuple[int, int]]) -> bool:
    """Do two selected pairs separate each other along ``comp``?"""
    pos = comp.position()
    iv = [tuple(sorted((pos[a], pos[b]))) for a, b in pairs]
    for i in range(len(iv)):
        for j in range(i + 1, len(iv)):
            (a, b), (c, d) = iv[i], iv[j]
            if a < c < b < d or c < a < d < b:
                return True
    return False


def normalize_paths(raw: list[list[Node]], b: LoopCycleIncidenceGraph, cf: ComponentFamily,
                    fc: FComplement) -> PathFamily:
    """Symmetric difference, consecutive re-pairing per component, trail re-derivation."""
    d = symmetric_difference(raw)
    odd_loops = {("L", i) for i in fc.three_odd_loops}
    if odd_degree_nodes(d) != odd_loops:
        raise NormalizationFailed("odd-degree nodes of the union are not the 3-odd loops")
    if any(o[0] == "P" for _, o in d):
        raise NormalizationFailed("union touches a path-node")
    # at each component: link the two loops whose selected edges are paired
    link: dict[tuple[Node, Node], Node] = {}
    pairs: dict[int, list[tuple[int, int]]] = {}
    for ci, comp in enumerate(cf.components):
        c = ("C", ci)
        at = [o for (x, o) in d if x == c]
        if not at:
            continue
        if len(at) % 2:
            raise NormalizationFailed(f"component {ci} has odd degree in the union")
        sel = {b.selected_edge(c, o): o for o in at}
        pr = _consecutive_pairs(comp, list(sel))
        pairs[ci] = pr
        for e1, e2 in pr:
            link[(c, sel[e1])] = sel[e2]
            link[(c, sel[e2])] = sel[e1]
    # at each loop: pair incident union edges in sorted order, odd one out is an end
    loop_link: dict[tuple[Node, Node], Node] = {}
    free_end: dict[Node, Node] = {}
    for li in range(b.n_loops):
        lnode = ("L", li)
        at = sorted(x for (x, o) in d if o == lnode)
        if len(at) % 2:
            free_end[lnode] = at.pop(0)
        for k in range(0, len(at), 2):
            loop_link[(lnode, at[k])] = at[k + 1]
            loop_link[(lnode, at[k + 1])] = at[k]
    trails: list[list[Node]] = []
    used: set[tuple[Node, Node]] = set()
    for lnode in sorted(free_end):
        if _bedge(lnode, free_end[lnode]) in used:
            continue
        trail = [lnode]
        cur, nxt = lnode, free_end[lnode]
        while True:
            used.add(_bedge(cur, nxt))
            trail.append(nxt)
            if nxt[0] == "C":
                cur, nxt = nxt, link[(nxt, cur)]
                continue
            if (nxt, cur) in loop_link:
                cur, nxt = nxt, loop_link[(nxt, cur)]
                continue
            break
        if trail[-1] not in odd_loops or trail[-1] == lnode:
            raise NormalizationFailed(f"trail from {lnode} does not end at another 3-odd loop")
        trails.append(trail)
    # closed trails carry no end-loops; they are kept only as edges of the union
    for ci, pr in pairs.items():
        if interlaced(cf.components[ci], pr):
            raise NormalizationFailed(f"selected pairs interlace on component {ci}")
    return PathFamily(trails, d, pairs)


# --- M-paths and the new matching --------------------------------------------

def build_q_family(pf: PathFamily, cf: ComponentFamily, m: MatchingInF) -> QFamily:
    out: dict[int, list[tuple[int, ...]]] = {}
    all_q: list[int] = []
    for ci, pr in sorted(pf.pairs.items()):
        comp = cf.components[ci]
        pos = comp.position()
        selected = {e for p in pr for e in p}
        qs = []
        for e1, e2 in pr:
            a, z = sorted((pos[e1], pos[e2]))
            q = comp.edges[a + 1:z]
            if not q or q[0] not in m.edges or q[-1] not in m.edges:
                raise NotAnMPath(f"stretch between edges {e1} and {e2} is not an M-path")
            if any((e in m.edges) == (q[j - 1] in m.edges) for j, e in enumerate(q) if j):
                raise NotAnMPath(f"stretch between edges {e1} and {e2} does not alternate")
            if selected & set(q):
                raise NotAnMPath(f"stretch between edges {e1} and {e2} holds a selected edge")
            qs.append(q)
            all_q.extend(q)
        out[ci] = qs
    return QFamily(out, EdgeSet(all_q))


def modify_matching(m: MatchingInF, qf: QFamily, fm: FMatching) -> MatchingInF:
    """M* = (M outside Q) plus (Q edges lying on F-paths)."""
    q = qf.edge_set
    new = (m.edges - q) | (q & fm.edge_set)
    try:
        return MatchingInF(new, m.factor)
    except ValueError as exc:
        raise RewiredNotAMatching(str(exc)) from exc


# --- driver ---------------------------------------------------------------

def _paths_outside_loops(g: CubicGraph, h, loop_edges: EdgeSet) -> list[FPath] | None:
    """Split H* - E(L) into paths between 3-vertices; None if a cycle remains."""
    rest = h.edge_set - loop_edges
    inc: dict[int, list[int]] = {}
    for e in rest:
        for v in g.edges[e]:
            inc.setdefault(v, []).append(e)
    used: set[int] = set()
    out = []
    for s in sorted(inc):
        if len(inc[s]) != 1 or inc[s][0] in used:
            continue
        verts, edges = [s], []
        cur, e = s, inc[s][0]
        while True:
            used.add(e)
            edges.append(e)
            cur = g.other(e, cur)
            verts.append(cur)
            nxt = [d for d in inc[cur] if d != e]
            if len(nxt) != 1:
                break
            e = nxt[0]
        out.append(FPath(tuple(verts), tuple(edges)))
    if len(used) != len(rest):
        return None
    return out


def correct_and_color(g: CubicGraph, f: TwoFactor, m: MatchingInF, fm: FMatching,
                      fc: FComplement) -> CorrectionReport:
    """Run the repair and build a certificate; never trusts an unchecked step."""
    rep = CorrectionReport()
    if fc.three_even:
        c = construct(g, f, m, fm, fc)
        w = Witness(f, m, fm, fc)
        rep.certificate = make_certificate(c, w, "correction", nontrivial=False)
        rep.witness, rep.coloring = w, c
        return rep
    rep.nontrivial = True
    cf, b = build_B(g, f, m, fm, fc)
    raw = check_hypothesis(b, fc)
    if isinstance(raw, Infeasible):
        rep.infeasible = raw
        return rep
    pf = normalize_paths(raw, b, cf, fc)
    rep.claims["odd_ends"] = odd_degree_nodes(pf.edges) == {("L", i) for i in fc.three_odd_loops}
    rep.claims["no_interlacing"] = not any(interlaced(cf.components[ci], pr) for ci, pr in pf.pairs.items())
    qf = build_q_family(pf, cf, m)
    rep.claims["m_paths"] = True
    m_star = modify_matching(m, qf, fm)
    rep.claims["matching"] = True
    h = reduce(g, f, m)
    h_star = reduce(g, f, m_star)
    loop_edges = fc.edge_set
    rep.claims["keeps_three_vertices"] = h.three_vertices <= h_star.three_vertices
    rep.claims["keeps_loop_edges"] = loop_edges.issubset(h_star.edge_set)
    loop_vs = {v for lp in fc.loops for v in lp.vertices}
    rep.claims["new_three_on_loops"] = (h_star.three_vertices - h.three_vertices) <= loop_vs
    rep.details.update(
        b_trails=[[f"{k}{i}" for k, i in t] for t in pf.trails],
        q_paths={str(k): [list(q) for q in v] for k, v in qf.paths.items()},
        removed=[g.edges[e] for e in m.edges - m_star.edges],
        added=[g.edges[e] for e in m_star.edges - m.edges],
    )
    for name in ("keeps_three_vertices", "keeps_loop_edges", "new_three_on_loops"):
        if not rep.claims[name]:
            raise ClaimViolated(name, "fails after rewiring")
    paths = _paths_outside_loops(g, h_star, loop_edges)
    try:
        if paths is None:
            raise MalformedStructure("H* minus the loops contains a cycle")
        fm_star = make_f_matching(h_star, paths)
        rep.claims["splits_into_paths"] = True
    except MalformedStructure as exc:
        rep.claims["splits_into_paths"] = False
        raise ClaimViolated("splits_into_paths", str(exc)) from exc
    fc_star = f_complement(h_star, fm_star)
    rep.claims["same_loops"] = sorted(lp.edges for lp in fc_star.loops) == sorted(lp.edges for lp in fc.loops)
    if not rep.claims["same_loops"]:
        raise ClaimViolated("same_loops", "loops changed after rewiring")
    rep.claims["three_even"] = fc_star.three_even
    # per-loop parity: new 3-vertices on L match L's degree in the union
    deg: dict[int, int] = {}
    for _, o in pf.edges:
        deg[o[1]] = deg.get(o[1], 0) + 1
    new3 = h_star.three_vertices - h.three_vertices
    rep.claims["parity"] = all(
        sum(1 for v in lp.vertices if v in new3) % 2 == deg.get(i, 0) % 2
        for i, lp in enumerate(fc.loops)
    )
    if not (rep.claims["three_even"] and rep.claims["parity"]):
        raise ClaimViolated("three_even", "some loop is still 3-odd")
    c = construct(g, f, m_star, fm_star, fc_star)
    if not verify(c).ok:
        raise ClaimViolated("three_even", "coloring from the corrected matching fails verification")
    w = Witness(f, m_star, fm_star, fc_star)
    rep.witness, rep.coloring = w, c
    rep.certificate = make_certificate(c, w, "correction", nontrivial=True,
                                       removed=len(rep.details["removed"]),
                                       added=len(rep.details["added"]))
    return rep
