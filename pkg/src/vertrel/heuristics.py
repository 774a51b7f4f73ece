"""Edge-insertion heuristics.

Each basic heuristic maps a connected, non-complete graph to the set of
candidate insertions that tie on its criterion; derivative heuristics
refine a basic one down to a single insertion. Stable identifiers, used in
CLI flags and report columns:

====================  =========================================================
``alpha``             maximise the algebraic connectivity of the supergraph
``phi``               maximise the Fiedler-coordinate gap of the endpoints
``phi-cap``           ``phi`` refined by supergraph algebraic connectivity
``beta``              minimise the endpoint betweenness pair
``gamma``             minimise the endpoint degree pair
``delta``             max-degree vertex with its farthest non-neighbour
``random``            one uniformly random non-adjacent pair (seeded)
``b-posthoc``         best-scoring member of the ``beta`` tie set
``gamma-posthoc``     best-scoring member of the ``gamma`` tie set
====================  =========================================================

Real-valued criteria treat values within ``TIE_TOL`` (absolute) as tied;
degree and betweenness comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .graph import (
    EdgeInsertion,
    SimpleGraph,
    betweenness_all,
    bfs_distances,
    insert_edge,
    is_connected,
    non_adjacent_pairs,
)
from .spectral import algebraic_connectivity, spectral_data

#: Absolute tie tolerance for eigenvalue-based criteria; solver residuals
#: sit well below this, so true ties are never split by numerical noise.
TIE_TOL = 1e-9

BASIC_IDS = ("alpha", "phi", "beta", "gamma", "delta", "random")
DERIVED_IDS = ("phi-cap", "b-posthoc", "gamma-posthoc")
OPERATIONAL_IDS = BASIC_IDS + ("phi-cap",)
POST_HOC_SOURCE = {"b-posthoc": "beta", "gamma-posthoc": "gamma"}


@dataclass(frozen=True)
class HeuristicResult:
    """A heuristic's tie set plus the per-candidate criterion values."""

    heuristic_id: str
    candidates: tuple[EdgeInsertion, ...]
    metadata: Mapping[EdgeInsertion, object]


def _insertions_or_raise(g: SimpleGraph) -> list[EdgeInsertion]:
    if not is_connected(g):
        raise ValueError("heuristics require a connected graph")
    pairs = non_adjacent_pairs(g)
    if not pairs:
        raise ValueError("complete graph: no edge insertion is possible")
    return pairs


def _max_ties(values: dict[EdgeInsertion, float], tol: float) -> list[EdgeInsertion]:
    top = max(values.values())
    return sorted(e for e, v in values.items() if v >= top - tol)


def heuristic_alpha(g: SimpleGraph, tie_tol: float = TIE_TOL) -> HeuristicResult:
    """Insertions whose supergraph attains the maximum algebraic connectivity."""
    pairs = _insertions_or_raise(g)
    values = {e: algebraic_connectivity(insert_edge(g, e)) for e in pairs}
    winners = _max_ties(values, tie_tol)
    return HeuristicResult("alpha", tuple(winners), {e: values[e] for e in winners})


def heuristic_phi(g: SimpleGraph, tie_tol: float = TIE_TOL) -> HeuristicResult:
    """Insertions maximising the Fiedler distance between their endpoints.

    With a degenerate second eigenvalue the distance is the maximum gap
    over an orthonormal basis of its eigenspace.
    """
    pairs = _insertions_or_raise(g)
    data = spectral_data(g)
    values = {e: data.fiedler_distance(e.i, e.j) for e in pairs}
    winners = _max_ties(values, tie_tol)
    return HeuristicResult("phi", tuple(winners), {e: values[e] for e in winners})


def heuristic_phi_cap(g: SimpleGraph, tie_tol: float = TIE_TOL) -> HeuristicResult:
    """``phi`` with ties broken by supergraph algebraic connectivity.

    Residual ties (equal Fiedler distance and equal supergraph connectivity)
    fall back to the lexicographically smallest pair, so the output is a
    single insertion.
    """
    base = heuristic_phi(g, tie_tol=tie_tol)
    alphas = {e: algebraic_connectivity(insert_edge(g, e)) for e in base.candidates}
    winner = _max_ties(alphas, tie_tol)[0]
    return HeuristicResult("phi-cap", (winner,), {winner: alphas[winner]})


def _min_pair_ties(
    pairs: list[EdgeInsertion], value_of: list
) -> tuple[list[EdgeInsertion], dict]:
    # Rank a pair by its sorted endpoint values (smaller first); exact compare.
    keyed = {e: tuple(sorted((value_of[e.i], value_of[e.j]))) for e in pairs}
    best = min(keyed.values())
    winners = sorted(e for e, k in keyed.items() if k == best)
    return winners, keyed


def heuristic_beta(g: SimpleGraph, per_pair: bool = False) -> HeuristicResult:
    """Insertions between the vertices of minimum betweenness.

    Pairs are compared by their sorted betweenness values, smaller
    coordinate first; the comparison is exact (rational arithmetic).
    """
    pairs = _insertions_or_raise(g)
    scores = betweenness_all(g, per_pair=per_pair)
    winners, keyed = _min_pair_ties(pairs, scores)
    return HeuristicResult("beta", tuple(winners), {e: keyed[e] for e in winners})


def heuristic_gamma(g: SimpleGraph) -> HeuristicResult:
    """Insertions between the vertices of minimum degree (sorted-pair order)."""
    pairs = _insertions_or_raise(g)
    degrees = g.degrees()
    winners, keyed = _min_pair_ties(pairs, degrees)
    return HeuristicResult("gamma", tuple(winners), {e: keyed[e] for e in winners})


def heuristic_delta(g: SimpleGraph) -> HeuristicResult:
    """Pair a maximum-degree vertex with its farthest non-neighbour.

    All maximum-degree vertices contribute candidate pairs and the overall
    farthest pairs are kept. A tier whose vertices are adjacent to
    everything contributes nothing; in that case the next degree tier is
    used, so non-complete graphs always produce a result.
    """
    _insertions_or_raise(g)
    degrees = g.degrees()
    for tier in sorted(set(degrees), reverse=True):
        found: dict[EdgeInsertion, int] = {}
        for u in range(g.n):
            if degrees[u] != tier:
                continue
            dists = bfs_distances(g, u)
            for w in range(g.n):
                if w != u and not g.has_edge(u, w):
                    e = EdgeInsertion.normalized(u, w)
                    d = int(dists[w])
                    if e not in found or d > found[e]:
                        found[e] = d
        if found:
            far = max(found.values())
            winners = sorted(e for e, d in found.items() if d == far)
            return HeuristicResult("delta", tuple(winners), {e: far for e in winners})
    raise ValueError("complete graph: no edge insertion is possible")


def heuristic_random(g: SimpleGraph, seed: int) -> HeuristicResult:
    """One uniformly random candidate; the same seed always picks the same pair."""
    pairs = _insertions_or_raise(g)
    rng = random.Random(seed)
    choice = pairs[rng.randrange(len(pairs))]
    return HeuristicResult("random", (choice,), {choice: None})


def best_by_score(
    candidates: tuple[EdgeInsertion, ...], scores: Mapping[EdgeInsertion, Fraction]
) -> EdgeInsertion:
    """Highest-scoring candidate; exact comparison, ties to the smallest pair."""
    missing = [e for e in candidates if e not in scores]
    if missing:
        raise ValueError(f"missing score for candidate {missing[0].as_tuple()}")
    top = max(scores[e] for e in candidates)
    return min(e for e in candidates if scores[e] == top)


def derive_post_hoc(
    base: HeuristicResult,
    scores: Mapping[EdgeInsertion, Fraction],
    heuristic_id: str | None = None,
) -> HeuristicResult:
    """Ideal refinement: keep the base candidate with the best exact score."""
    if heuristic_id is None:
        heuristic_id = {v: k for k, v in POST_HOC_SOURCE.items()}.get(
            base.heuristic_id, f"{base.heuristic_id}-posthoc"
        )
    winner = best_by_score(base.candidates, scores)
    return HeuristicResult(heuristic_id, (winner,), {winner: scores[winner]})


_DISPATCH: dict[str, Callable[..., HeuristicResult]] = {
    "alpha": heuristic_alpha,
    "phi": heuristic_phi,
    "phi-cap": heuristic_phi_cap,
    "beta": heuristic_beta,
    "gamma": heuristic_gamma,
    "delta": heuristic_delta,
}


def apply_heuristic(
    heuristic_id: str, g: SimpleGraph, seed: int | None = None
) -> HeuristicResult:
    """Run one operational heuristic by its stable identifier."""
    if heuristic_id == "random":
        if seed is None:
            raise ValueError("the random heuristic requires an explicit seed")
        return heuristic_random(g, seed)
    try:
        fn = _DISPATCH[heuristic_id]
    except KeyError:
        raise ValueError(f"unknown heuristic id {heuristic_id!r}") from None
    return fn(g)
