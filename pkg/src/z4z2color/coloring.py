"""Z4 x Z2 edge-colorings: arithmetic, verification, construction, extraction.

A coloring assigns every edge a pair ``(x, y)`` with ``x`` mod 4 and ``y``
mod 2.  It is valid when it is proper, never uses ``(0, 0)`` and the three
colors at every vertex sum to zero.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import InvalidColoring, NotProper3Coloring, NotThreeEven
from .factor import TwoFactor, two_factor
from .graph import CubicGraph, EdgeSet
from .graph6 import parse_graph6, to_graph6
from .structures import (
    FComplement,
    FMatching,
    FPath,
    MatchingInF,
    ReducedGraph,
    cycles_of_edges,
    f_complement,
    make_f_matching,
    reduce,
)


@dataclass(frozen=True, order=True)
class GroupElement:
    x: int
    y: int

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % 4)
        object.__setattr__(self, "y", self.y % 2)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.x + other.x, self.y + other.y)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.x, -self.y)

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    @property
    def code(self) -> int:
        """Index 0..7 used by the search kernels."""
        return 2 * self.x + self.y

    @classmethod
    def from_code(cls, c: int) -> "GroupElement":
        return cls(c >> 1, c & 1)

    def __repr__(self) -> str:
        return f"({self.x},{self.y})"


ZERO = GroupElement(0, 0)
ELEMENTS = tuple(GroupElement(x, y) for x in range(4) for y in range(2))
NONZERO = ELEMENTS[1:]

#: Images of the three color classes of a 3-edge-coloring.
CLASS_COLORS = (GroupElement(1, 0), GroupElement(1, 1), GroupElement(2, 1))


def zero_sum_blocks() -> list[frozenset[GroupElement]]:
    return [
        frozenset(t)
        for t in itertools.combinations(NONZERO, 3)
        if (t[0] + t[1] + t[2]).is_zero
    ]


@dataclass(frozen=True)
class Verdicts:
    proper: bool
    nowhere_zero: bool
    zero_sum: bool

    @property
    def ok(self) -> bool:
        return self.proper and self.nowhere_zero and self.zero_sum

    def as_dict(self) -> dict[str, bool]:
        return {"proper": self.proper, "nowhere_zero": self.nowhere_zero, "zero_sum": self.zero_sum}


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    graph: CubicGraph
    colors: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.colors) != self.graph.m:
            raise InvalidColoring(f"expected {self.graph.m} colors, got {len(self.colors)}")

    def __getitem__(self, e: int) -> GroupElement:
        return self.colors[e]

    def x_class(self, i: int) -> EdgeSet:
        return EdgeSet(e for e, c in enumerate(self.colors) if c.x == i % 4)

    def y_class(self, j: int) -> EdgeSet:
        return EdgeSet(e for e, c in enumerate(self.colors) if c.y == j % 2)

    def codes(self) -> list[int]:
        return [c.code for c in self.colors]

    @classmethod
    def from_codes(cls, g: CubicGraph, codes: Sequence[int]) -> "EdgeColoring":
        return cls(g, tuple(GroupElement.from_code(int(c)) for c in codes))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EdgeColoring):
            return self.graph == other.graph and self.colors == other.colors
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.colors)


def verify(c: EdgeColoring) -> Verdicts:
    g = c.graph
    proper = True
    zero_sum = True
    for v in range(g.n):
        a, b, d = (c[e] for e in g.incidence[v])
        if a == b or a == d or b == d:
            proper = False
        if not (a + b + d).is_zero:
            zero_sum = False
    nowhere_zero = all(not col.is_zero for col in c.colors)
    return Verdicts(proper, nowhere_zero, zero_sum)


def from_3_edge_coloring(g: CubicGraph, classes: Sequence[Any]) -> EdgeColoring:
    """Map a proper 3-edge-coloring onto (1,0), (1,1), (2,1).

    ``classes`` is either three EdgeSets or a per-edge list of colors 0..2.
    """
    if len(classes) == 3 and all(isinstance(s, EdgeSet) for s in classes):
        col = [-1] * g.m
        for k, s in enumerate(classes):
            for e in s:
                if col[e] != -1:
                    raise NotProper3Coloring(f"edge {e} in two classes")
                col[e] = k
    else:
        col = [int(k) for k in classes]
    if len(col) != g.m or any(k not in (0, 1, 2) for k in col):
        raise NotProper3Coloring("classes do not partition the edges into three colors")
    for v in range(g.n):
        if len({col[e] for e in g.incidence[v]}) != 3:
            raise NotProper3Coloring(f"vertex {v} sees a repeated color")
    return EdgeColoring(g, tuple(CLASS_COLORS[k] for k in col))


def _loop_x_values(lp_vertices: Sequence[int], lp_edges: Sequence[int], three: frozenset[int],
                   g: CubicGraph) -> dict[int, int]:
    """Assign 1/3 along a loop: copy across 3-vertices, flip across 2-vertices."""
    L = len(lp_vertices)
    trio = [v for v in lp_vertices if v in three]
    start = min(trio) if trio else min(lp_vertices)
    i0 = lp_vertices.index(start)
    # rotate so start is first, then orient toward the lower loop-neighbour
    verts = list(lp_vertices[i0:]) + list(lp_vertices[:i0])
    edges = list(lp_edges[i0:]) + list(lp_edges[:i0])
    # edges[k] joins verts[k] and verts[k+1]; reverse if the other way is lower
    if verts[-1] < verts[1]:
        verts = [verts[0]] + verts[:0:-1]
        edges = edges[::-1]
    out: dict[int, int] = {}
    val = 1
    out[edges[0]] = val
    for k in range(1, L):
        if verts[k] not in three:
            val = 4 - val
        out[edges[k]] = val
    closing_ok = (out[edges[-1]] == out[edges[0]]) if start in three else (out[edges[-1]] != out[edges[0]])
    if not closing_ok:
        raise NotThreeEven(f"loop through {start} has an odd number of 3-vertices")
    return out


def construct(g: CubicGraph, f: TwoFactor, m: MatchingInF, fm: FMatching, fc: FComplement) -> EdgeColoring:
    """Build the coloring from a witness whose F-complement is 3-even."""
    three = frozenset(v for v in range(g.n) if v not in m.covered)
    bad = [lp for lp in fc.loops if not lp.three_even]
    if bad:
        raise NotThreeEven(f"loop {bad[0].vertices} holds {bad[0].three_count} 3-vertices")
    x = [-1] * g.m
    for e in m.edges:
        x[e] = 0
    for e in fm.edge_set:
        x[e] = 2
    for lp in fc.loops:
        for e, val in _loop_x_values(lp.vertices, lp.edges, three, g).items():
            x[e] = val
    if -1 in x:
        raise InvalidColoring(f"edge {x.index(-1)} not covered by M, paths or loops")
    colors = tuple(GroupElement(x[e], 1 if e in f.edge_set else 0) for e in range(g.m))
    c = EdgeColoring(g, colors)
    v = verify(c)
    if not v.ok:
        raise InvalidColoring(f"constructed coloring fails verification: {v}")
    return c


@dataclass(frozen=True)
class Witness:
    factor: TwoFactor
    matching: MatchingInF
    f_matching: FMatching
    complement: FComplement

    def __iter__(self):
        return iter((self.factor, self.matching, self.f_matching, self.complement))


def construct_from(w: Witness) -> EdgeColoring:
    return construct(w.factor.graph, w.factor, w.matching, w.f_matching, w.complement)


def _x2_paths(h: ReducedGraph, x2: EdgeSet) -> list[FPath]:
    g = h.graph
    inc: dict[int, list[int]] = {}
    for e in x2:
        for v in g.edges[e]:
            inc.setdefault(v, []).append(e)
    for v in h.three_vertices:
        if len(inc.get(v, ())) != 1:
            raise InvalidColoring(f"3-vertex {v} meets {len(inc.get(v, ()))} edges with x=2")
    paths = []
    used: set[int] = set()
    for s in sorted(h.three_vertices):
        if inc[s][0] in used:
            continue
        verts, edges = [s], []
        cur, e = s, inc[s][0]
        while True:
            edges.append(e)
            used.add(e)
            cur = g.other(e, cur)
            verts.append(cur)
            nxt = [d for d in inc[cur] if d != e]
            if not nxt:
                break
            if len(nxt) != 1:
                raise InvalidColoring(f"vertex {cur} meets three edges with x=2")
            e = nxt[0]
        paths.append(FPath(tuple(verts), tuple(edges)))
    # Leftover x=2 edges avoid 3-vertices.  A 2-vertex colored
    # {(0,1), (2,0), (2,1)} carries two of them, so they close into cycles
    # alternating F and non-F edges.  Those cycles are loops with no
    # 3-vertex; f_complement picks them up from H - P.
    rest = EdgeSet(e for e in x2 if e not in used)
    if rest:
        cycles_of_edges(g, rest)  # raises unless the leftover is 2-regular
    return paths


def extract(c: EdgeColoring) -> Witness:
    """Recover (F, M, F-matching, F-complement) from a valid coloring."""
    v = verify(c)
    if not v.ok:
        raise InvalidColoring(f"coloring is not valid: {v}")
    g = c.graph
    y0 = c.y_class(0)
    if not g.is_perfect_matching(y0):
        raise InvalidColoring("edges with y=0 do not form a perfect matching")
    f = two_factor(g, y0)
    m = MatchingInF(c.x_class(0), f)
    h = reduce(g, f, m)
    try:
        fm = make_f_matching(h, _x2_paths(h, c.x_class(2)))
        fc = f_complement(h, fm)
    except InvalidColoring:
        raise
    except Exception as exc:  # MalformedStructure from the validators
        raise InvalidColoring(str(exc)) from exc
    if not fc.three_even:
        raise InvalidColoring("extracted F-complement is not 3-even")
    return Witness(f, m, fm, fc)


@dataclass
class Certificate:
    graph6: str
    two_factor: list[list[int]]
    matching: list[list[int]]
    f_matching: list[list[int]]
    loops: list[dict[str, Any]]
    coloring: dict[str, list[int]]
    verdicts: dict[str, bool]
    stage: str
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json(self, **kw: Any) -> str:
        doc = {
            "graph6": self.graph6,
            "two_factor": self.two_factor,
            "matching": self.matching,
            "f_matching": self.f_matching,
            "loops": self.loops,
            "coloring": self.coloring,
            "verdicts": self.verdicts,
            "stage": self.stage,
        }
        if self.notes:
            doc["notes"] = self.notes
        return json.dumps(doc, **kw)

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Certificate":
        return cls(
            graph6=doc["graph6"],
            two_factor=doc.get("two_factor", []),
            matching=doc.get("matching", []),
            f_matching=doc.get("f_matching", []),
            loops=doc.get("loops", []),
            coloring=doc["coloring"],
            verdicts=doc.get("verdicts", {}),
            stage=doc.get("stage", ""),
            notes=doc.get("notes", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def make_certificate(c: EdgeColoring, w: Witness, stage: str, **notes: Any) -> Certificate:
    g = c.graph
    verdicts = verify(c)
    return Certificate(
        graph6=to_graph6(g),
        two_factor=[list(cyc) for cyc in w.factor.cycles],
        matching=[list(g.edges[e]) for e in w.matching.edges],
        f_matching=[list(p.vertices) for p in w.f_matching.paths],
        loops=[
            {"vertices": list(lp.vertices), "three_vertices": lp.three_count, "three_even": lp.three_even}
            for lp in w.complement.loops
        ],
        coloring={str(e): [col.x, col.y] for e, col in enumerate(c.colors)},
        verdicts=verdicts.as_dict(),
        stage=stage,
        notes=dict(notes),
    )


@dataclass(frozen=True)
class CertificateCheck:
    verdicts: Verdicts
    verdicts_match: bool
    structures_consistent: bool
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.verdicts.ok and self.verdicts_match and self.structures_consistent


def check_certificate(cert: Certificate) -> CertificateCheck:
    """Re-derive every verdict and structure from the embedded data."""
    problems: list[str] = []
    g = parse_graph6(cert.graph6)
    try:
        colors = tuple(GroupElement(*cert.coloring[str(e)]) for e in range(g.m))
    except (KeyError, TypeError) as exc:
        raise InvalidColoring(f"coloring does not cover every edge: {exc}") from exc
    c = EdgeColoring(g, colors)
    verdicts = verify(c)
    match = verdicts.as_dict() == {k: bool(cert.verdicts.get(k)) for k in ("proper", "nowhere_zero", "zero_sum")}
    if not match:
        problems.append("embedded verdicts differ from recomputed ones")
    consistent = True
    if verdicts.ok:
        try:
            w = extract(c)
        except InvalidColoring as exc:
            consistent = False
            problems.append(f"extraction failed: {exc}")
        else:
            checks = {
                "two_factor": sorted(map(tuple, cert.two_factor)) == sorted(w.factor.cycles),
                "matching": sorted(tuple(sorted(p)) for p in cert.matching)
                == sorted(g.edges[e] for e in w.matching.edges),
                "f_matching": sorted(tuple(p) for p in cert.f_matching)
                == sorted(p.vertices for p in w.f_matching.paths),
                "loops": sorted(tuple(lp["vertices"]) for lp in cert.loops)
                == sorted(lp.vertices for lp in w.complement.loops),
            }
            for k, good in checks.items():
                if not good:
                    consistent = False
                    problems.append(f"{k} does not match the coloring")
    else:
        problems.append(f"coloring fails verification: {verdicts.as_dict()}")
    return CertificateCheck(verdicts, match, consistent, tuple(problems))
