"""Graph file formats: the native edge-list layout and graph6 interchange.

Edge list (``.el``): first line ``n m``, then ``m`` lines ``i j`` with
0-based indices and ``i < j``. graph6 (``.g6``) follows the usual 6-bit
packed upper-triangle encoding used by small-graph corpora.
"""

from __future__ import annotations

import os

from .graph import SimpleGraph, build_graph

GRAPH6_HEADER = ">>graph6<<"


def format_edge_list(g: SimpleGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected 'n m' header, got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header says m={m} but found {len(lines) - 1} edge lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        i, j = int(parts[0]), int(parts[1])
        if not i < j:
            raise ValueError(f"edge lines must satisfy i < j, got {ln!r}")
        edges.append((i, j))
    return build_graph(n, edges)


def write_edge_list(g: SimpleGraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(g))


def read_edge_list(path: str | os.PathLike) -> SimpleGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def format_graph6(g: SimpleGraph) -> str:
    if g.n <= 62:
        head = [g.n + 63]
    else:
        head = [126, 63 + (g.n >> 12 & 63), 63 + (g.n >> 6 & 63), 63 + (g.n & 63)]
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def parse_graph6(text: str) -> SimpleGraph:
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER) :]
    if not line:
        raise ValueError("empty graph6 data")
    data = [ord(c) - 63 for c in line]
    if any(not 0 <= v <= 63 for v in data):
        raise ValueError("invalid graph6 character")
    if data[0] == 63:  # '~' prefix: 18-bit vertex count
        if len(data) < 4:
            raise ValueError("truncated graph6 vertex count")
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    if len(data) * 6 < need:
        raise ValueError("truncated graph6 edge bits")
    bits = []
    for val in data:
        for shift in range(5, -1, -1):
            bits.append(val >> shift & 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def write_graph6(g: SimpleGraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graph6(g) + "\n")


def read_graph6(path: str | os.PathLike) -> SimpleGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph6(fh.read())


def load_graph(path: str | os.PathLike) -> SimpleGraph:
    """Read a graph file, picking the format from the extension (.el or .g6)."""
    ext = os.path.splitext(os.fspath(path))[1].lower()
    if ext == ".el":
        return read_edge_list(path)
    if ext == ".g6":
        return read_graph6(path)
    raise ValueError(f"unknown graph file extension {ext!r} (expected .el or .g6)")
