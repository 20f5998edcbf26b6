"""graph6 encoding and decoding for cubic graphs.

Bit layout follows the standard format: N(n) header, then the upper
triangle of the adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),...
packed into 6-bit groups offset by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, TextIO

from .errors import MalformedGraph6
from .graph import CubicGraph

_HEADER = ">>graph6<<"


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        chunk, rest = data[2:8], data[8:]
        if len(chunk) < 6:
            raise MalformedGraph6("truncated 8-byte size header")
    else:
        chunk, rest = data[1:4], data[4:]
        if len(chunk) < 3:
            raise MalformedGraph6("truncated 4-byte size header")
    n = 0
    for c in chunk:
        if not 63 <= c <= 126:
            raise MalformedGraph6(f"bad header byte {c!r}")
        n = (n << 6) | (c - 63)
    return n, rest


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def decode_edges(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Decode any simple graph; no degree checks."""
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise MalformedGraph6("non-ASCII character") from exc
    n, body = _decode_n(data)
    if n < 0:
        raise MalformedGraph6("negative vertex count")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} data bytes for n={n}, got {len(body)}")
    bits: list[int] = []
    for c in body:
        if not 63 <= c <= 126:
            raise MalformedGraph6(f"bad data byte {c!r}")
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise MalformedGraph6("non-zero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return n, edges


def parse_graph6(text: str) -> CubicGraph:
    n, edges = decode_edges(text)
    return CubicGraph(n, edges)


def to_graph6(g: CubicGraph) -> str:
    n = g.n
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_n(n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def iter_graph6_lines(fh: TextIO) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, graph6)`` skipping blanks and ``#`` comments."""
    for lineno, line in enumerate(fh, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, s


def read_graph6_file(path: str | Path) -> list[CubicGraph]:
    with open(path) as fh:
        return [parse_graph6(s) for _, s in iter_graph6_lines(fh)]
