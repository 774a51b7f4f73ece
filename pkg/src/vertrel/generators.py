"""Constrained random-graph datasets.

Three generators (Gilbert-style edge-probability, preferential attachment,
ring rewiring) feed a rejection sampler that only accepts connected graphs
with minimum degree >= 2 that are not isomorphic to any graph already in
the dataset. Every accepted graph carries a seed derived deterministically
from the master seed, so rebuilding a dataset is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import asdict, dataclass

from .graph import SimpleGraph, build_graph, canonical_key, fingerprint, is_connected
from .graphio import format_edge_list, parse_edge_list

MODELS = ("er", "ba", "ws")


class QuotaError(RuntimeError):
    """Raised when rejection sampling cannot reach a quota."""

    def __init__(self, message: str, attempts: int, accepted: int):
        super().__init__(message)
        self.attempts = attempts
        self.accepted = accepted


@dataclass(frozen=True)
class DatasetSpec:
    """Recipe for one dataset: per-order quotas plus model parameters."""

    orders: tuple[int, ...]
    er_count: int
    ba_count: int
    ws_count: int
    master_seed: int
    er_p: float = 0.3
    ba_m: int = 2
    ws_k: int = 4
    ws_beta: float = 0.2
    max_attempts: int = 100_000

    def __post_init__(self) -> None:
        if not self.orders:
            raise ValueError("at least one graph order is required")
        if min(self.er_count, self.ba_count, self.ws_count) < 0:
            raise ValueError("quotas must be nonnegative")
        if not 0.0 <= self.er_p <= 1.0:
            raise ValueError(f"er_p must be in [0, 1], got {self.er_p}")
        if self.ba_m < 2:
            raise ValueError(f"ba_m must be >= 2, got {self.ba_m}")
        if self.ws_k % 2 or self.ws_k < 2:
            raise ValueError(f"ws_k must be even and >= 2, got {self.ws_k}")
        if not 0.0 <= self.ws_beta <= 1.0:
            raise ValueError(f"ws_beta must be in [0, 1], got {self.ws_beta}")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")
        for n in self.orders:
            if self.ba_count and not self.ba_m < n:
                raise ValueError(f"ba_m={self.ba_m} needs more than {n} vertices")
            if self.ws_count and not self.ws_k < n:
                raise ValueError(f"ws_k={self.ws_k} needs more than {n} vertices")

    def quota(self, model: str) -> int:
        return {"er": self.er_count, "ba": self.ba_count, "ws": self.ws_count}[model]


@dataclass(frozen=True)
class DatasetEntry:
    graph_id: str
    graph: SimpleGraph
    model: str
    order: int
    seed: int


def stable_seed(*parts: object) -> int:
    """64-bit seed derived from the parts; stable across runs and platforms."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def gen_er(n: int, p: float, rng: random.Random) -> SimpleGraph:
    """Each of the n(n-1)/2 possible edges is present independently with probability p."""
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def gen_ba(n: int, m_attach: int, rng: random.Random) -> SimpleGraph:
    """Preferential attachment on a seed clique.

    Starts from a clique on ``m_attach`` vertices; every later vertex
    attaches to ``m_attach`` distinct existing vertices chosen with
    probability proportional to their current degree.
    """
    if not 2 <= m_attach < n:
        raise ValueError(f"need 2 <= m_attach < n, got m_attach={m_attach}, n={n}")
    edges = [(i, j) for i in range(m_attach) for j in range(i + 1, m_attach)]
    # One slot per unit of degree; uniform draws from it are degree-weighted.
    weighted = [v for i, j in edges for v in (i, j)]
    for v in range(m_attach, n):
        targets: set[int] = set()
        while len(targets) < m_attach:
            targets.add(weighted[rng.randrange(len(weighted))])
        for u in sorted(targets):
            edges.append((u, v))
            weighted.extend((u, v))
    return build_graph(n, edges)


def gen_ws(n: int, k: int, beta: float, rng: random.Random) -> SimpleGraph:
    """Ring lattice with k nearest neighbours, each lattice edge rewired with probability beta."""
    if k % 2 or not 2 <= k < n:
        raise ValueError(f"need even k with 2 <= k < n, got k={k}, n={n}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"rewiring probability must be in [0, 1], got {beta}")
    adjacency = [set() for _ in range(n)]
    for d in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + d) % n
            adjacency[u].add(v)
            adjacency[v].add(u)
    for d in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + d) % n
            if rng.random() < beta:
                free = [w for w in range(n) if w != u and w not in adjacency[u]]
                if not free:
                    continue
                w = free[rng.randrange(len(free))]
                adjacency[u].discard(v)
                adjacency[v].discard(u)
                adjacency[u].add(w)
                adjacency[w].add(u)
    edges = [(u, v) for u in range(n) for v in adjacency[u] if u < v]
    return build_graph(n, sorted(edges))


def _generate(model: str, order: int, spec: DatasetSpec, rng: random.Random) -> SimpleGraph:
    if model == "er":
        return gen_er(order, spec.er_p, rng)
    if model == "ba":
        return gen_ba(order, spec.ba_m, rng)
    if model == "ws":
        return gen_ws(order, spec.ws_k, spec.ws_beta, rng)
    raise ValueError(f"unknown model {model!r}")


@dataclass
class CellStats:
    model: str
    order: int
    attempts: int = 0
    accepted: int = 0
    rejected_disconnected: int = 0
    rejected_pendant: int = 0
    rejected_isomorph: int = 0


def build_dataset(spec: DatasetSpec) -> tuple[list[DatasetEntry], list[CellStats]]:
    """Rejection-sample every (order, model) cell of the spec.

    Accepted graphs are connected, have minimum degree >= 2, and carry
    pairwise-distinct canonical keys across the whole dataset. Raises
    :class:`QuotaError` when ``max_attempts`` consecutive attempts fail to
    produce an acceptable graph.
    """
    entries: list[DatasetEntry] = []
    stats: list[CellStats] = []
    seen: dict[tuple, set[bytes]] = {}
    index = 0
    for order in spec.orders:
        for model in MODELS:
            quota = spec.quota(model)
            cell = CellStats(model, order)
            stats.append(cell)
            attempt = 0
            since_last = 0
            while cell.accepted < quota:
                if since_last >= spec.max_attempts:
                    rate = cell.accepted / cell.attempts if cell.attempts else 0.0
                    raise QuotaError(
                        f"bailing on {model} order {order}: {cell.accepted}/{quota} accepted "
                        f"after {cell.attempts} attempts (acceptance rate {rate:.2%})",
                        attempts=cell.attempts,
                        accepted=cell.accepted,
                    )
                seed = stable_seed(spec.master_seed, model, order, attempt)
                rng = random.Random(seed)
                g = _generate(model, order, spec, rng)
                attempt += 1
                cell.attempts += 1
                since_last += 1
                if not is_connected(g):
                    cell.rejected_disconnected += 1
                    continue
                if g.min_degree() < 2:
                    cell.rejected_pendant += 1
                    continue
                pre = fingerprint(g)
                bucket = seen.get(pre)
                if bucket is not None:
                    key = canonical_key(g)
                    if key in bucket:
                        cell.rejected_isomorph += 1
                        continue
                    bucket.add(key)
                else:
                    seen[pre] = {canonical_key(g)}
                graph_id = f"g{index:04d}-{model}-n{order}"
                entries.append(DatasetEntry(graph_id, g, model, order, seed))
                index += 1
                cell.accepted += 1
                since_last = 0
    return entries, stats


def manifest_digest(manifest: dict) -> str:
    """Hash of a manifest with its own hash field blanked."""
    scrubbed = {k: v for k, v in manifest.items() if k != "manifest_hash"}
    blob = json.dumps(scrubbed, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def write_dataset(
    entries: list[DatasetEntry],
    spec: DatasetSpec,
    stats: list[CellStats],
    outdir: str | os.PathLike,
) -> dict:
    """Write one edge-list file per graph plus a manifest with integrity hash."""
    os.makedirs(outdir, exist_ok=True)
    graphs = []
    for entry in entries:
        filename = f"{entry.graph_id}.el"
        with open(os.path.join(outdir, filename), "w", encoding="ascii", newline="\n") as fh:
            fh.write(format_edge_list(entry.graph))
        graphs.append(
            {
                "id": entry.graph_id,
                "file": filename,
                "model": entry.model,
                "order": entry.order,
                "seed": entry.seed,
                "n": entry.graph.n,
                "m": entry.graph.m,
                "canonical_sha256": hashlib.sha256(canonical_key(entry.graph)).hexdigest(),
            }
        )
    spec_dict = asdict(spec)
    spec_dict["orders"] = list(spec.orders)  # JSON round-trips lists, not tuples
    manifest = {
        "format": "vertrel-dataset/1",
        "spec": spec_dict,
        "stats": [vars(s) for s in stats],
        "graphs": graphs,
    }
    manifest["manifest_hash"] = manifest_digest(manifest)
    with open(os.path.join(outdir, "manifest.json"), "w", encoding="ascii", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def load_dataset(path: str | os.PathLike) -> tuple[list[DatasetEntry], dict]:
    """Read a dataset directory back, refusing to run on a tampered manifest."""
    manifest_path = os.path.join(path, "manifest.json")
    with open(manifest_path, "r", encoding="ascii") as fh:
        manifest = json.load(fh)
    expected = manifest.get("manifest_hash")
    if manifest_digest(manifest) != expected:
        raise ValueError(f"manifest hash mismatch in {manifest_path}")
    entries = []
    for rec in manifest["graphs"]:
        with open(os.path.join(path, rec["file"]), "r", encoding="ascii") as fh:
            g = parse_edge_list(fh.read())
        if g.n != rec["n"] or g.m != rec["m"]:
            raise ValueError(f"graph file {rec['file']} does not match its manifest entry")
        entries.append(DatasetEntry(rec["id"], g, rec["model"], rec["order"], rec["seed"]))
    return entries, manifest
