"""Naive reference implementations used as independent test oracles.

Everything here works on plain edge lists with dict/set adjacency and
deliberately avoids the package's bitset code paths: subset connectivity
by set-BFS, distances by Floyd-Warshall, betweenness by explicit
shortest-path enumeration, cut sets and vertex connectivity by exhaustive
subset removal, and the score integral by binomial expansion rather than
the factorial closed form.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb

INF = float("inf")


def adjacency(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def naive_connected(n: int, edges, vertices=None) -> bool:
    """Set-BFS connectivity of the subgraph induced by ``vertices`` (default: all)."""
    verts = set(range(n)) if vertices is None else set(vertices)
    if not verts:
        raise ValueError("empty vertex set")
    adj = adjacency(n, edges)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def naive_counts(n: int, edges) -> tuple[int, ...]:
    """S_1..S_n by enumerating every vertex combination."""
    out = []
    for r in range(1, n + 1):
        out.append(
            sum(1 for combo in combinations(range(n), r) if naive_connected(n, edges, combo))
        )
    return tuple(out)


def naive_cut_count(n: int, edges, size: int) -> int:
    """Number of ``size``-vertex sets whose removal leaves a disconnected graph."""
    count = 0
    for combo in combinations(range(n), size):
        rest = set(range(n)) - set(combo)
        if len(rest) >= 2 and not naive_connected(n, edges, rest):
            count += 1
    return count


def naive_distances(n: int, edges) -> list[list[float]]:
    """All-pairs distances by Floyd-Warshall."""
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for a, b in edges:
        dist[a][b] = dist[b][a] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return dist


def enumerate_shortest_paths(n: int, edges, s: int, t: int) -> list[tuple[int, ...]]:
    """Every shortest s-t path, by DFS along distance-decreasing moves."""
    dist = naive_distances(n, edges)
    if dist[s][t] == INF:
        return []
    adj = adjacency(n, edges)
    paths = []

    def walk(v, trail):
        if v == t:
            paths.append(tuple(trail))
            return
        for w in sorted(adj[v]):
            if dist[w][t] == dist[v][t] - 1:
                walk(w, trail + [w])

    walk(s, [s])
    return paths


def naive_betweenness(n: int, edges, v: int) -> Fraction:
    """Literal global ratio: paths containing v interiorly over all shortest paths."""
    total = 0
    through = 0
    for s in range(n):
        for t in range(s + 1, n):
            for path in enumerate_shortest_paths(n, edges, s, t):
                total += 1
                if v != s and v != t and v in path:
                    through += 1
    return Fraction(through, total)


def naive_vertex_connectivity(n: int, edges) -> int:
    if len(set(map(tuple, map(sorted, edges)))) == n * (n - 1) // 2:
        return n - 1
    for size in range(n - 1):
        if naive_cut_count(n, edges, size) > 0:
            return size
    return n - 1


def naive_score(counts: tuple[int, ...]) -> Fraction:
    """Integral of sum_r S_r p^r (1-p)^(n-r) over [0,1] by binomial expansion."""
    n = len(counts)
    total = Fraction(0)
    for r, s in enumerate(counts, start=1):
        term = Fraction(0)
        for j in range(n - r + 1):
            term += Fraction(comb(n - r, j) * (-1) ** j, r + j + 1)
        total += s * term
    return total


def naive_poly_at(counts: tuple[int, ...], p: Fraction) -> Fraction:
    """Exact polynomial value at a rational p."""
    n = len(counts)
    return sum(
        (s * p**r * (1 - p) ** (n - r) for r, s in enumerate(counts, start=1)), Fraction(0)
    )


def random_edge_list(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def random_connected_edges(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    """Rejection-sample an edge list whose graph is connected."""
    while True:
        edges = random_edge_list(rng, n, p)
        if naive_connected(n, edges):
            return edges


CYCLE5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
PATH3 = [(0, 1), (1, 2)]
PATH4 = [(0, 1), (1, 2), (2, 3)]
PETERSEN = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
]


def complete_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]
