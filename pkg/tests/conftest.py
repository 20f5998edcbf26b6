from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from z4z2color import generators as gen
from z4z2color.graph import CubicGraph
from z4z2color.graph6 import parse_graph6

FIXTURES = Path(__file__).parent / "fixtures"

RANDOM_SEED = 20240611
PERM_SEED = 11


def golden() -> dict[str, CubicGraph]:
    out = {}
    for line in (FIXTURES / "named.g6").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        name, g6 = line.split()
        out[name] = parse_graph6(g6)
    return out


def small_snarks() -> dict[str, CubicGraph]:
    """Snarks on at most 14 vertices (girth not enforced)."""
    out = {"petersen": gen.petersen(),
           "petersen-t1": gen.by_name("truncated-petersen:1"),
           "petersen-t2": gen.by_name("truncated-petersen:2")}
    for i, pg in enumerate(gen.random_permutation_snarks(4, seed=PERM_SEED, sizes=(5, 7))):
        out[f"perm5-{i}"] = pg.graph
    return out


def _k4_minus_edge(offset: int) -> tuple[list[tuple[int, int]], int]:
    """K4 with one edge subdivided; returns its edges and the degree-2 vertex."""
    a, b, c, d, s = (offset + i for i in range(5))
    return [(a, b), (a, c), (a, d), (b, c), (b, d), (c, s), (d, s)], s


def bridged_pair() -> CubicGraph:
    """Two subdivided K4s joined by a bridge (10 vertices, not colorable)."""
    e1, s1 = _k4_minus_edge(0)
    e2, s2 = _k4_minus_edge(5)
    return CubicGraph(10, e1 + e2 + [(s1, s2)])


def no_perfect_matching() -> CubicGraph:
    """A center joined to three subdivided K4s (16 vertices, no perfect matching)."""
    blocks = [_k4_minus_edge(5 * i) for i in range(3)]
    return CubicGraph(16, [e for es, _ in blocks for e in es] + [(15, s) for _, s in blocks])


def random_small(count: int = 56) -> list[CubicGraph]:
    return list(gen.random_cubic_graphs(count, sizes=(4, 6, 8, 10, 12, 14, 14), seed=RANDOM_SEED))


@pytest.fixture(scope="session")
def controls() -> dict[str, CubicGraph]:
    return gen.controls()


@pytest.fixture(scope="session")
def snarks14() -> dict[str, CubicGraph]:
    return small_snarks()


@pytest.fixture(scope="session")
def random14() -> list[CubicGraph]:
    return random_small()


@pytest.fixture(scope="session")
def petersen() -> CubicGraph:
    return gen.petersen()


def corpus14() -> list[tuple[str, CubicGraph]]:
    """Controls, snarks up to 14 vertices, a bridged graph and random graphs."""
    out = list(gen.controls().items()) + list(small_snarks().items())
    out.append(("bridged", bridged_pair()))
    out += [(f"random-{i}", g) for i, g in enumerate(random_small())]
    return out


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, CubicGraph]]:
    return corpus14()


def cubic_graphs_strategy(sizes=(4, 6, 8, 10, 12, 14)):
    """Hypothesis strategy: seeded random connected cubic graphs."""
    from hypothesis import strategies as st

    return st.builds(
        lambda n, seed: next(gen.random_cubic_graphs(1, [n], seed=seed)),
        st.sampled_from(sizes),
        st.integers(0, 2**20),
    )


def correction_instances(graphs, per_factor: int = 40, per_matching: int = 4):
    """(g, f, m, fm, fc) with at least one 3-odd loop, in a fixed order."""
    from z4z2color.factor import enumerate_perfect_matchings, two_factor
    from z4z2color.structures import f_complement, iter_f_matchings, iter_maximum_matchings, reduce

    for g in graphs:
        for pm in enumerate_perfect_matchings(g):
            f = two_factor(g, pm)
            if f.odd_count == 0:
                continue
            for m in itertools.islice(iter_maximum_matchings(f), per_factor):
                h = reduce(g, f, m)
                for fm in itertools.islice(iter_f_matchings(h), per_matching):
                    fc = f_complement(h, fm)
                    if not fc.three_even:
                        yield g, f, m, fm, fc
