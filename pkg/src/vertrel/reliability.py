"""Exact vertex-reliability machinery.

For a connected graph whose vertices survive independently with probability
``p``, the probability that the surviving induced subgraph is connected is
``sum_r S_r * p^r * (1-p)^(n-r)`` where ``S_r`` counts connected induced
subgraphs on exactly ``r`` vertices. Everything here is exact: subset
connectivity flags, the ``S_r`` counts, and the score integral
``F = int_0^1 R(p) dp`` as a rational number.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import EdgeInsertion, SimpleGraph, insert_edge, subset_connected

#: Hard cap on subset enumeration (2^24 masks); larger graphs are refused.
ENUMERATION_BUDGET = 24


class EnumerationBudgetError(ValueError):
    """Raised when a graph is too large for exhaustive subset enumeration."""


@dataclass(frozen=True)
class SubsetClassification:
    """Connectivity flag for every nonempty vertex subset of one graph.

    ``bits`` packs one flag per mask value: bit ``mask & 7`` of byte
    ``mask >> 3`` is set iff the subgraph induced by ``mask`` is connected.
    128 KiB at n = 20, retained once per base graph and shared by all of
    its candidate insertions.
    """

    n: int
    bits: bytes

    def connected(self, mask: int) -> bool:
        if mask == 0:
            raise ValueError("empty vertex subset")
        return bool(self.bits[mask >> 3] >> (mask & 7) & 1)


@dataclass(frozen=True)
class ReliabilityProfile:
    """The counts ``S_1..S_n`` of connected induced subgraphs by size."""

    n: int
    counts: tuple[int, ...]


def _check_budget(n: int) -> None:
    if n > ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"subset enumeration needs 2^{n} masks; the budget is n <= {ENUMERATION_BUDGET}"
        )


def classify_subsets(g: SimpleGraph) -> SubsetClassification:
    """Connectivity flag for each of the 2^n - 1 nonempty vertex subsets."""
    _check_budget(g.n)
    size = 1 << g.n
    bits = bytearray((size + 7) >> 3)
    for mask in range(1, size):
        if subset_connected(g, mask):
            bits[mask >> 3] |= 1 << (mask & 7)
    return SubsetClassification(g.n, bytes(bits))


def count_connected(cls: SubsetClassification) -> ReliabilityProfile:
    """Tally the classification into per-size counts ``S_1..S_n``."""
    n = cls.n
    size = 1 << n
    flags = np.unpackbits(
        np.frombuffer(cls.bits, dtype=np.uint8), bitorder="little"
    )[:size].astype(bool)
    popcounts = np.bitwise_count(np.arange(size, dtype=np.uint32))
    tally = np.bincount(popcounts[flags], minlength=n + 1)
    return ReliabilityProfile(n, tuple(int(c) for c in tally[1:]))


def recount_for_insertion(
    g: SimpleGraph, cls: SubsetClassification, e: EdgeInsertion
) -> ReliabilityProfile:
    """Profile of ``g`` plus one edge, re-testing only the subsets that can change.

    A subset connected in the base graph stays connected in any supergraph,
    and a new edge cannot help a subset missing either endpoint; so only
    subsets that are disconnected in the base classification and contain
    both endpoints are re-tested against the supergraph.
    """
    if cls.n != g.n:
        raise ValueError(f"stale classification: built for n={cls.n}, graph has n={g.n}")
    supergraph = insert_edge(g, e)  # also rejects an already-present edge
    counts = list(count_connected(cls).counts)
    both = 1 << e.i | 1 << e.j
    rest = g.full_mask() & ~both
    bits = cls.bits
    sub = rest
    while True:
        mask = sub | both
        if not bits[mask >> 3] >> (mask & 7) & 1 and subset_connected(supergraph, mask):
            counts[mask.bit_count() - 1] += 1
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return ReliabilityProfile(g.n, tuple(counts))


def reliability_profile(g: SimpleGraph) -> ReliabilityProfile:
    """Convenience: classify all subsets and tally the counts."""
    return count_connected(classify_subsets(g))


def evaluate_polynomial(prof: ReliabilityProfile, p: float) -> float:
    """Probability of staying connected when each vertex survives with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"survival probability must be in [0, 1], got {p}")
    n = prof.n
    q = 1.0 - p
    return float(sum(s * p**r * q ** (n - r) for r, s in enumerate(prof.counts, start=1)))


def score_integral(prof: ReliabilityProfile) -> Fraction:
    """Exact value of ``int_0^1 R(p) dp``.

    Uses ``int_0^1 p^r (1-p)^(n-r) dp = r! (n-r)! / (n+1)!`` so that score
    comparisons downstream are never tolerance-dependent.
    """
    n = prof.n
    numerator = sum(
        s * math.factorial(r) * math.factorial(n - r)
        for r, s in enumerate(prof.counts, start=1)
    )
    return Fraction(numerator, math.factorial(n + 1))


def write_profiles_csv(
    rows: Iterable[tuple[str, ReliabilityProfile]], path: str | os.PathLike
) -> None:
    """One row per graph: id, n, S_1..S_n, and F as an exact num/den pair."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("graph_id,n,counts,score_num,score_den\n")
        for graph_id, prof in rows:
            score = score_integral(prof)
            counts = ";".join(str(c) for c in prof.counts)
            fh.write(f"{graph_id},{prof.n},{counts},{score.numerator},{score.denominator}\n")
