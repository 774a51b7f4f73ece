"""Bitset-backed simple graphs and the classical connectivity quantities.

Vertices are integers ``0..n-1`` with ``n <= 64`` so that every vertex set
fits in a single machine word. Adjacency is one integer bitmask per vertex,
which keeps induced-subgraph connectivity checks allocation-free; those
checks run once per nonempty vertex subset during reliability counting and
are the hottest loop in the package.

All graph values are immutable; every operation here is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

MAX_VERTICES = 64

#: Returned by :func:`distance` for unreachable pairs.
INFINITY = math.inf


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph: bit ``j`` of ``adj[i]`` is set iff ``{i, j}`` is an edge."""

    n: int
    adj: tuple[int, ...]
    m: int

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees())

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(i, j)`` pairs with ``i < j``, in ascending order."""
        out = []
        for i in range(self.n):
            row = self.adj[i] >> (i + 1) << (i + 1)  # drop neighbours <= i
            while row:
                j = (row & -row).bit_length() - 1
                row &= row - 1
                out.append((i, j))
        return out

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def full_mask(self) -> int:
        return (1 << self.n) - 1


@dataclass(frozen=True, order=True)
class EdgeInsertion:
    """A candidate new edge ``{i, j}`` with ``i < j``."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j:
            raise ValueError(
                f"insertion endpoints must satisfy 0 <= i < j, got ({self.i}, {self.j})"
            )

    @classmethod
    def normalized(cls, a: int, b: int) -> "EdgeInsertion":
        return cls(a, b) if a < b else cls(b, a)

    def as_tuple(self) -> tuple[int, int]:
        return (self.i, self.j)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
    """Build a graph on ``n`` vertices from an edge list.

    Raises ``ValueError`` with a distinct message for an out-of-range index,
    a self-loop, or a duplicate edge.
    """
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    adj = [0] * n
    m = 0
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"vertex index out of range: ({a}, {b}) with n={n}")
        if a == b:
            raise ValueError(f"self-loop not allowed: ({a}, {b})")
        if adj[a] >> b & 1:
            raise ValueError(f"duplicate edge: ({a}, {b})")
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        m += 1
    return SimpleGraph(n, tuple(adj), m)


def insert_edge(g: SimpleGraph, e: EdgeInsertion) -> SimpleGraph:
    """Return a new graph with edge ``{e.i, e.j}`` added; ``g`` is unchanged."""
    if e.j >= g.n:
        raise ValueError(f"vertex index out of range: ({e.i}, {e.j}) with n={g.n}")
    if g.has_edge(e.i, e.j):
        raise ValueError(f"edge already present: ({e.i}, {e.j})")
    adj = list(g.adj)
    adj[e.i] |= 1 << e.j
    adj[e.j] |= 1 << e.i
    return SimpleGraph(g.n, tuple(adj), g.m + 1)


def non_adjacent_pairs(g: SimpleGraph) -> list[EdgeInsertion]:
    """All candidate insertions of ``g`` in ascending ``(i, j)`` order."""
    out = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not g.has_edge(i, j):
                out.append(EdgeInsertion(i, j))
    return out


def _reach(adj: tuple[int, ...], start: int, within: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside the mask ``within``."""
    seen = start
    frontier = start
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        frontier = grow & within & ~seen
        seen |= frontier
    return seen


def is_connected(g: SimpleGraph) -> bool:
    if g.n == 1:
        return True
    full = g.full_mask()
    return _reach(g.adj, 1, full) == full


def subset_connected(g: SimpleGraph, mask: int) -> bool:
    """Whether the subgraph induced by the vertex bitmask ``mask`` is connected."""
    if mask == 0:
        raise ValueError("empty vertex subset")
    if mask >> g.n:
        raise ValueError(f"mask {mask:#x} has bits outside 0..{g.n - 1}")
    low = mask & -mask
    return _reach(g.adj, low, mask) == mask


def bfs_distances(g: SimpleGraph, src: int) -> list[int | float]:
    """BFS distances from ``src``; unreachable vertices get ``INFINITY``."""
    dist: list[int | float] = [INFINITY] * g.n
    dist[src] = 0
    seen = 1 << src
    frontier = seen
    d = 0
    adj = g.adj
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        frontier = grow & ~seen
        seen |= frontier
        d += 1
        f = frontier
        while f:
            low = f & -f
            dist[low.bit_length() - 1] = d
            f ^= low
    return dist


def distance(g: SimpleGraph, i: int, j: int) -> int | float:
    """Shortest-path length between ``i`` and ``j``; ``INFINITY`` if unreachable."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise ValueError(f"vertex index out of range: ({i}, {j}) with n={g.n}")
    if i == j:
        return 0
    return bfs_distances(g, i)[j]


def diameter(g: SimpleGraph) -> int:
    """Maximum pairwise distance. Requires a connected graph."""
    _require_connected(g, "diameter")
    best = 0
    for v in range(g.n):
        ecc = max(bfs_distances(g, v))
        if ecc > best:
            best = int(ecc)
    return best


def _require_connected(g: SimpleGraph, what: str) -> None:
    if not is_connected(g):
        raise ValueError(f"{what} requires a connected graph")


def _path_counts(g: SimpleGraph, src: int) -> tuple[list[int], list[int]]:
    """Counting BFS: per-vertex distance from ``src`` and number of shortest paths."""
    n = g.n
    dist = [-1] * n
    sigma = [0] * n
    dist[src] = 0
    sigma[src] = 1
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            row = g.adj[v]
            while row:
                w = (row & -row).bit_length() - 1
                row &= row - 1
                if dist[w] == -1:
                    dist[w] = d
                    nxt.append(w)
                if dist[w] == d:
                    sigma[w] += sigma[v]
        frontier = nxt
    return dist, sigma


def betweenness_all(g: SimpleGraph, per_pair: bool = False) -> list[Fraction]:
    """Betweenness of every vertex, as exact rationals.

    Default is the global-ratio form: paths through ``v`` (as an interior
    vertex, over all pairs avoiding ``v``) divided by the total number of
    shortest paths over all distinct pairs. With ``per_pair=True`` each
    pair contributes ``sigma_st(v) / sigma_st`` instead (the conventional
    normalisation); only the induced vertex ordering differs downstream.
    """
    _require_connected(g, "betweenness")
    n = g.n
    dist = []
    sigma = []
    for s in range(n):
        d, sg = _path_counts(g, s)
        dist.append(d)
        sigma.append(sg)

    total_paths = 0
    through = [Fraction(0)] * n if per_pair else [0] * n
    for s in range(n):
        for t in range(s + 1, n):
            st = sigma[s][t]
            total_paths += st
            d_st = dist[s][t]
            for v in range(n):
                if v == s or v == t:
                    continue
                if dist[s][v] + dist[v][t] == d_st:
                    cnt = sigma[s][v] * sigma[v][t]
                    if cnt:
                        if per_pair:
                            through[v] += Fraction(cnt, st)
                        else:
                            through[v] += cnt
    if per_pair:
        return list(through)
    return [Fraction(c, total_paths) for c in through]


def betweenness(g: SimpleGraph, v: int, per_pair: bool = False) -> Fraction:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex index out of range: {v} with n={g.n}")
    return betweenness_all(g, per_pair=per_pair)[v]


def vertex_connectivity(g: SimpleGraph) -> int:
    """Minimum number of vertex-independent paths over all vertex pairs.

    Computed as max-flow on the standard vertex-split network, minimised
    over all non-adjacent pairs; complete graphs give ``n - 1``.
    """
    _require_connected(g, "vertex connectivity")
    if g.n < 2:
        raise ValueError("vertex connectivity requires at least 2 vertices")
    if g.is_complete():
        return g.n - 1
    best = g.n - 1
    for pair in non_adjacent_pairs(g):
        flow = _max_vertex_disjoint_paths(g, pair.i, pair.j)
        if flow < best:
            best = flow
            if best == 0:
                break
    return best


def _max_vertex_disjoint_paths(g: SimpleGraph, s: int, t: int) -> int:
    # Vertex split: node v becomes v_in = v and v_out = v + n with an
    # internal arc of capacity 1 (infinite for s and t). Each edge {u, v}
    # becomes u_out -> v_in and v_out -> u_in of capacity 1.
    n = g.n
    size = 2 * n
    inf = n * n
    cap = [[0] * size for _ in range(size)]
    for v in range(n):
        cap[v][v + n] = inf if v in (s, t) else 1
    for i, j in g.edges():
        cap[i + n][j] = 1
        cap[j + n][i] = 1
    source, sink = s + n, t
    flow = 0
    while True:
        # BFS augmenting path on the residual network
        prev = [-1] * size
        prev[source] = source
        queue = [source]
        while queue and prev[sink] == -1:
            u = queue.pop(0)
            row = cap[u]
            for w in range(size):
                if row[w] > 0 and prev[w] == -1:
                    prev[w] = u
                    queue.append(w)
        if prev[sink] == -1:
            return flow
        w = sink
        while w != source:
            u = prev[w]
            cap[u][w] -= 1
            cap[w][u] += 1
            w = u
        flow += 1


def relabel(g: SimpleGraph, mapping: list[int]) -> SimpleGraph:
    """Return the graph with vertex ``v`` renamed to ``mapping[v]``."""
    if sorted(mapping) != list(range(g.n)):
        raise ValueError("mapping must be a permutation of 0..n-1")
    adj = [0] * g.n
    for v in range(g.n):
        row = g.adj[v]
        new = 0
        while row:
            w = (row & -row).bit_length() - 1
            row &= row - 1
            new |= 1 << mapping[w]
        adj[mapping[v]] = new
    return SimpleGraph(g.n, tuple(adj), g.m)


def fingerprint(g: SimpleGraph) -> tuple:
    """Cheap isomorphism-invariant pre-hash: (n, m, degrees, distance multiset)."""
    dists = []
    for v in range(g.n):
        for d in bfs_distances(g, v)[v + 1 :]:
            dists.append(-1 if d == INFINITY else int(d))
    return (g.n, g.m, tuple(sorted(g.degrees())), tuple(sorted(dists)))


def _equitable_refine(adj: tuple[int, ...], n: int, cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition until it is equitable.

    Cell order is derived only from isomorphism-invariant data (previous
    cell index plus the per-cell neighbour profile), so isomorphic graphs
    refine to matching partitions.
    """
    while True:
        color = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                color[v] = ci
        k = len(cells)
        sigs: dict[tuple, list[int]] = {}
        for v in range(n):
            counts = [0] * k
            row = adj[v]
            while row:
                w = (row & -row).bit_length() - 1
                row &= row - 1
                counts[color[w]] += 1
            sigs.setdefault((color[v], tuple(counts)), []).append(v)
        new_cells = [sorted(sigs[key]) for key in sorted(sigs)]
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _are_twins(adj: tuple[int, ...], u: int, v: int) -> bool:
    # Same neighbourhood apart from one another: swapping u and v is an
    # automorphism, so branching on both would explore identical subtrees.
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def _encode(adj: tuple[int, ...], order: list[int]) -> bytes:
    # Row-by-row lower-triangle bits of the reordered adjacency matrix.
    n = len(order)
    bits = 0
    nbits = 0
    for k in range(1, n):
        row = adj[order[k]]
        for l in range(k):
            bits = bits << 1 | (row >> order[l] & 1)
            nbits += 1
    return bytes([n]) + bits.to_bytes((nbits + 7) // 8 or 1, "big")


def canonical_key(g: SimpleGraph) -> bytes:
    """A byte string equal for two graphs iff they are isomorphic.

    Individualisation-refinement search over cell-respecting vertex
    orderings, returning the lexicographically minimal adjacency encoding.
    Intended for small graphs (the dataset builder uses it at n <= 20).
    """
    n = g.n
    adj = g.adj
    if n == 1:
        return bytes([1])
    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(adj[v].bit_count(), []).append(v)
    cells = [sorted(by_degree[d]) for d in sorted(by_degree)]
    cells = _equitable_refine(adj, n, cells)

    best: bytes | None = None

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        target = -1
        for ci, cell in enumerate(cells):
            if len(cell) > 1:
                target = ci
                break
        if target == -1:
            order = [cell[0] for cell in cells]
            enc = _encode(adj, order)
            if best is None or enc < best:
                best = enc
            return
        tried: list[int] = []
        for v in cells[target]:
            if any(_are_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [w for w in cells[target] if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_equitable_refine(adj, n, split))

    search(cells)
    assert best is not None
    return best
