"""Compare the compiled and pure-Python backtracking kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends run the same searches (Z4 x Z2 colorability, paranoid mode,
and 3-edge-colorability) on a few named graphs; results must agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from z4z2color import _kernels, generators
from z4z2color.oracle import (
    KLEIN_ADD,
    KLEIN_NEG,
    KLEIN_PALETTE,
    Z4Z2_ADD,
    Z4Z2_NEG,
    Z4Z2_PALETTE,
    _arrays,
    _prefix_triples,
)


def _cases():
    graphs = {"petersen": generators.petersen(), "blanusa1": generators.blanusa(1),
              "flower5": generators.flower(5), "Q3": generators.cube()}
    none = np.zeros((1, 0), np.int64)
    for name, g in graphs.items():
        eu, ev, inc = _arrays(g.n, g.edges)
        yield f"{name} z4z2", (eu, ev, inc, Z4Z2_ADD, Z4Z2_NEG, Z4Z2_PALETTE, True, False,
                               _prefix_triples(False), 10**8, 1)
        yield f"{name} z4z2 paranoid x50", (eu, ev, inc, Z4Z2_ADD, Z4Z2_NEG, Z4Z2_PALETTE, True, False,
                                            _prefix_triples(True), 10**8, 50)
        yield f"{name} 3-edge", (eu, ev, inc, KLEIN_ADD, KLEIN_NEG, KLEIN_PALETTE, False, True,
                                 none, 10**8, 1)


def _time(fn, args, repeat):
    best = float("inf")
    res = None
    for _ in range(repeat):
        out = np.zeros((args[-1], args[0].shape[0]), np.int64)
        t0 = time.perf_counter()
        res = fn(*args, out)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    if _kernels.jit_search is None:
        print("numba unavailable or disabled; only the Python backend can run")
    print(f"{'case':32s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s}  result")
    for name, args in _cases():
        tp, rp = _time(_kernels.py_search, args, a.repeat)
        if _kernels.jit_search is not None:
            _kernels.jit_search(*args, np.zeros((args[-1], args[0].shape[0]), np.int64))  # warm up
            tj, rj = _time(_kernels.jit_search, args, a.repeat)
            assert tuple(rp) == tuple(rj), (name, rp, rj)
            print(f"{name:32s} {tp:10.4f} {tj:10.5f} {tp / tj:8.1f}  {tuple(int(x) for x in rp)}")
        else:
            print(f"{name:32s} {tp:10.4f} {'-':>10s} {'-':>8s}  {tuple(int(x) for x in rp)}")


if __name__ == "__main__":
    main()
