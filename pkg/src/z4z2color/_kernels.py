"""Backtracking edge-coloring kernels.

The same function bodies run either under ``numba.njit`` or as plain
Python over numpy arrays.  Set ``Z4Z2COLOR_DISABLE_NUMBA=1`` to force the
pure-Python path (or when numba is not importable).

Colors are small integer codes; ``add`` is the group table over codes and
``neg`` the inverse map, so the kernel knows nothing about which group it
is searching over.  Code 0 means "unassigned" and is never a palette entry.
"""

from __future__ import annotations

import os
import types

import numpy as np

DISABLE_ENV = "Z4Z2COLOR_DISABLE_NUMBA"

STATUS_EXHAUSTED = 0
STATUS_LIMIT = 1
STATUS_BUDGET = 2


def _numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("disabled by environment")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _vertex_ok(v, i, c, color, inc, add, neg, zero_sum):
    """Can edge ``i`` take color ``c`` given the assigned edges at ``v``?"""
    a = 0
    b = 0
    deg = 0
    for k in range(inc.shape[1]):
        f = inc[v, k]
        if f < 0:
            continue
        deg += 1
        if f == i:
            continue
        d = color[f]
        if d == 0:
            continue
        if d == c:
            return False
        if a == 0:
            a = d
        else:
            b = d
    if not zero_sum or deg != 3:
        return True
    if a != 0 and b != 0:
        return add[add[a, b], c] == 0
    if a != 0:
        forced = neg[add[a, c]]
        return forced != 0 and forced != a and forced != c
    return True


def _search(eu, ev, inc, add, neg, palette, zero_sum, interchangeable, prefix,
            max_nodes, max_solutions, out):
    """Depth-first search over edges 0..m-1 in index order.

    ``prefix`` rows fix the colors of the first ``prefix.shape[1]`` edges
    (symmetry breaking); every row is tried in turn.  With
    ``interchangeable`` the palette colors are treated as symmetric and a
    color may only be opened in order of first use.

    Returns ``(status, solutions_found, nodes)``.
    """
    m = eu.shape[0]
    P = palette.shape[0]
    color = np.zeros(m, np.int64)
    ptr = np.zeros(m + 1, np.int64)
    mx = np.full(m + 1, -1, np.int64)
    nodes = 0
    found = 0
    npre = prefix.shape[1]
    for row in range(prefix.shape[0]):
        for j in range(m):
            color[j] = 0
        ok = True
        for j in range(npre):
            c = prefix[row, j]
            color[j] = c
            nodes += 1
            if not (_vertex_ok(eu[j], j, c, color, inc, add, neg, zero_sum)
                    and _vertex_ok(ev[j], j, c, color, inc, add, neg, zero_sum)):
                ok = False
                break
        if not ok:
            continue
        if npre == m:
            for j in range(m):
                out[found, j] = color[j]
            found += 1
            if found >= max_solutions:
                return STATUS_LIMIT, found, nodes
            continue
        i = npre
        ptr[i] = 0
        while i >= npre:
            if i == m:
                for j in range(m):
                    out[found, j] = color[j]
                found += 1
                if found >= max_solutions:
                    return STATUS_LIMIT, found, nodes
                i -= 1
                continue
            limit = P
            if interchangeable and mx[i] + 2 < P:
                limit = mx[i] + 2
            if ptr[i] >= limit:
                color[i] = 0
                i -= 1
                continue
            p = ptr[i]
            ptr[i] += 1
            c = palette[p]
            nodes += 1
            if nodes > max_nodes:
                return STATUS_BUDGET, found, nodes
            color[i] = c
            if (_vertex_ok(eu[i], i, c, color, inc, add, neg, zero_sum)
                    and _vertex_ok(ev[i], i, c, color, inc, add, neg, zero_sum)):
                mx[i + 1] = mx[i] if mx[i] >= p else p
                i += 1
                ptr[i] = 0
            else:
                color[i] = 0
    return STATUS_EXHAUSTED, found, nodes


py_vertex_ok = _vertex_ok
# pure copy of the search bound to the pure vertex test, whatever happens below
py_search = types.FunctionType(_search.__code__, {**globals(), "_vertex_ok": py_vertex_ok}, "py_search")

if HAVE_NUMBA:
    # the module-level names become the compiled versions (cache needs module functions)
    _vertex_ok = njit(cache=True)(py_vertex_ok)
    jit_vertex_ok = _vertex_ok
    jit_search = njit(cache=True)(_search)
    search = jit_search
else:
    jit_search = None
    search = py_search


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
