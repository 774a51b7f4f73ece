"""Experiment pipeline: RDI scoring, summary tables, and signed-rank tests.

For each graph, every selected heuristic contributes its candidate
insertions to a shared pool; each pooled insertion is scored exactly
(``F = int_0^1 R(p) dp`` of its supergraph) via the incremental recount.
With ``F_B``/``F_W`` the best and worst pooled scores, an insertion's
relative deviation index is ``(F_B - F) / (F_B - F_W)`` (0 when the pool
is flat), a heuristic's RDI on the graph is the mean over its insertions,
and MRDI averages that over the dataset. All of it is exact rational
arithmetic; floats only appear in spectral criteria and p-values.
"""

from __future__ import annotations

import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .generators import DatasetEntry, stable_seed
from .graph import EdgeInsertion, SimpleGraph
from .heuristics import (
    BASIC_IDS,
    OPERATIONAL_IDS,
    POST_HOC_SOURCE,
    HeuristicResult,
    apply_heuristic,
    best_by_score,
)
from .reliability import classify_subsets, recount_for_insertion, score_integral

DEFAULT_TEST_PAIRS = (
    ("phi-cap", "b-posthoc"),
    ("phi-cap", "gamma-posthoc"),
    ("gamma-posthoc", "b-posthoc"),
)


def rdi_insertion(score: Fraction, f_best: Fraction, f_worst: Fraction) -> Fraction:
    """Relative deviation of one insertion's score within [f_worst, f_best]."""
    if not f_worst <= score <= f_best:
        raise ValueError(f"score {score} outside [{f_worst}, {f_best}]")
    if f_best == f_worst:
        return Fraction(0)
    return (f_best - score) / (f_best - f_worst)


def rdi_heuristic(insertion_rdis: Sequence[Fraction]) -> Fraction:
    """Mean RDI over a heuristic's insertions on one graph."""
    if not insertion_rdis:
        raise ValueError("a heuristic must produce at least one insertion")
    return sum(insertion_rdis, Fraction(0)) / len(insertion_rdis)


def mrdi(per_graph_rdis: Sequence[Fraction]) -> Fraction:
    """Mean RDI over the dataset (one value per graph)."""
    if not per_graph_rdis:
        raise ValueError("MRDI needs at least one graph")
    return sum(per_graph_rdis, Fraction(0)) / len(per_graph_rdis)


@dataclass(frozen=True)
class InsertionOutcome:
    pair: EdgeInsertion
    score: Fraction
    rdi: Fraction


@dataclass(frozen=True)
class RdiRecord:
    """One heuristic's scored insertions on one graph."""

    graph_id: str
    heuristic_id: str
    outcomes: tuple[InsertionOutcome, ...]
    rdi: Fraction
    f_best: Fraction
    f_worst: Fraction


def evaluate_graph(
    entry: DatasetEntry,
    heuristic_ids: Sequence[str] = OPERATIONAL_IDS,
    run_seed: int = 0,
) -> list[RdiRecord]:
    """Apply the heuristics to one graph and score every produced insertion."""
    g = entry.graph
    results: dict[str, HeuristicResult] = {}
    for hid in heuristic_ids:
        seed = stable_seed(run_seed, entry.graph_id) if hid == "random" else None
        results[hid] = apply_heuristic(hid, g, seed=seed)

    pool: set[EdgeInsertion] = set()
    for res in results.values():
        pool.update(res.candidates)
    cls = classify_subsets(g)
    scores = {e: score_integral(recount_for_insertion(g, cls, e)) for e in pool}
    f_best = max(scores.values())
    f_worst = min(scores.values())

    records = []
    for hid in heuristic_ids:
        outcomes = tuple(
            InsertionOutcome(e, scores[e], rdi_insertion(scores[e], f_best, f_worst))
            for e in results[hid].candidates
        )
        records.append(
            RdiRecord(
                entry.graph_id,
                hid,
                outcomes,
                rdi_heuristic([o.rdi for o in outcomes]),
                f_best,
                f_worst,
            )
        )
    return records


def materialize_post_hoc(records: list[RdiRecord]) -> list[RdiRecord]:
    """Derive the ideal post-hoc records from the scored beta/gamma tie sets."""
    derived = []
    for rec in records:
        hid = next((k for k, v in POST_HOC_SOURCE.items() if v == rec.heuristic_id), None)
        if hid is None:
            continue
        scores = {o.pair: o.score for o in rec.outcomes}
        winner = best_by_score(tuple(scores), scores)
        outcome = next(o for o in rec.outcomes if o.pair == winner)
        derived.append(
            RdiRecord(rec.graph_id, hid, (outcome,), outcome.rdi, rec.f_best, rec.f_worst)
        )
    return derived


@dataclass(frozen=True)
class HeuristicSummary:
    heuristic_id: str
    insertions: int
    best: int  # insertions that reached the graph's best pooled score
    unique: int  # graphs where at least one insertion reached it
    mrdi: Fraction
    sd_rdi: float  # population SD over per-insertion RDIs


def summarize(records: Iterable[RdiRecord]) -> tuple[list[HeuristicSummary], list[RdiRecord]]:
    """Per-heuristic totals over complete records.

    Post-hoc heuristics are materialized here from the beta/gamma records
    and included in both the summaries and the returned record list.
    """
    records = list(records)
    present = {rec.heuristic_id for rec in records}
    if not present.intersection(POST_HOC_SOURCE):
        records = records + materialize_post_hoc(records)

    by_graph: dict[str, set[str]] = {}
    for rec in records:
        by_graph.setdefault(rec.graph_id, set()).add(rec.heuristic_id)
    expected = {r.heuristic_id for r in records}
    for graph_id, hids in by_graph.items():
        if hids != expected:
            raise ValueError(f"incomplete records for graph {graph_id}")

    summaries = []
    for hid in sorted(expected, key=_heuristic_sort_key):
        recs = [r for r in records if r.heuristic_id == hid]
        all_rdis = [o.rdi for r in recs for o in r.outcomes]
        mean = sum(all_rdis, Fraction(0)) / len(all_rdis)
        second = sum((v * v for v in all_rdis), Fraction(0)) / len(all_rdis)
        summaries.append(
            HeuristicSummary(
                heuristic_id=hid,
                insertions=len(all_rdis),
                best=sum(1 for r in recs for o in r.outcomes if o.score == r.f_best),
                unique=sum(1 for r in recs if any(o.score == r.f_best for o in r.outcomes)),
                mrdi=mrdi([r.rdi for r in recs]),
                sd_rdi=math.sqrt(max(0.0, float(second - mean * mean))),
            )
        )
    return summaries, records


_SORT_ORDER = {hid: k for k, hid in enumerate(BASIC_IDS + ("phi-cap", "b-posthoc", "gamma-posthoc"))}


def _heuristic_sort_key(hid: str) -> tuple:
    return (_SORT_ORDER.get(hid, len(_SORT_ORDER)), hid)


@dataclass(frozen=True)
class WilcoxonResult:
    t_star: float  # standardized statistic (continuity-corrected z)
    p_value: float  # one-sided, alternative: median of differences > 0
    r_effect: float  # point-biserial magnitude |z| / sqrt(n_nonzero)
    n_nonzero: int
    method: str  # "normal" or "exact"


def _signed_ranks(diffs: list[Fraction]) -> tuple[list[Fraction], list[int]]:
    """Average ranks of |d| (exact), plus the tie-group sizes."""
    indexed = sorted(range(len(diffs)), key=lambda k: abs(diffs[k]))
    ranks: list[Fraction] = [Fraction(0)] * len(diffs)
    ties = []
    pos = 0
    while pos < len(indexed):
        end = pos
        while end + 1 < len(indexed) and abs(diffs[indexed[end + 1]]) == abs(diffs[indexed[pos]]):
            end += 1
        avg = Fraction(pos + 1 + end + 1, 2)
        for k in range(pos, end + 1):
            ranks[indexed[k]] = avg
        ties.append(end - pos + 1)
        pos = end + 1
    return ranks, ties


def wilcoxon_one_sided(
    x: Sequence, y: Sequence, method: str = "auto"
) -> WilcoxonResult:
    """Paired signed-rank test of the alternative ``median(x - y) > 0``.

    Zero differences are dropped; tied absolute differences get average
    ranks with the usual variance adjustment; the normal approximation uses
    a 0.5 continuity correction. Fewer than 10 nonzero differences fall
    back to exact enumeration of all sign assignments. Multiple-comparison
    correction is left to the caller.
    """
    if len(x) != len(y):
        raise ValueError("paired samples must have equal length")
    if method not in ("auto", "normal", "exact"):
        raise ValueError(f"unknown method {method!r}")
    diffs = [Fraction(a) - Fraction(b) for a, b in zip(x, y)]
    diffs = [d for d in diffs if d != 0]
    n = len(diffs)
    if n == 0:
        return WilcoxonResult(0.0, 1.0, 0.0, 0, "exact")
    if method == "auto":
        method = "normal" if n >= 10 else "exact"

    ranks, ties = _signed_ranks(diffs)
    w_plus = sum((r for d, r in zip(diffs, ranks) if d > 0), Fraction(0))
    mean = Fraction(n * (n + 1), 4)
    variance = Fraction(n * (n + 1) * (2 * n + 1), 24) - Fraction(
        sum(t**3 - t for t in ties), 48
    )
    sd = math.sqrt(float(variance))
    z = float(w_plus - mean - Fraction(1, 2)) / sd if sd > 0 else 0.0

    if method == "normal":
        p = 0.5 * math.erfc(z / math.sqrt(2.0))
    else:
        if n > 64:
            raise ValueError("exact mode is limited to 64 pairs; use the normal approximation")
        # Distribution of W+ over all 2^n sign patterns by integer DP.
        # Average ranks are half-integers, so doubling makes everything exact.
        doubled = [int(2 * r) for r in ranks]
        total = sum(doubled)
        table = [0] * (total + 1)
        table[0] = 1
        for dr in doubled:
            for s in range(total, dr - 1, -1):
                table[s] += table[s - dr]
        threshold = int(2 * w_plus)
        p = sum(table[threshold:]) / (1 << n)
    return WilcoxonResult(z, p, abs(z) / math.sqrt(n), n, method)


def bonferroni(p: float, comparisons: int) -> float:
    return min(1.0, p * comparisons)


@dataclass(frozen=True)
class PairedTest:
    better: str  # heuristic expected to have lower RDI
    other: str
    result: WilcoxonResult
    p_bonferroni: float


def run_rank_tests(
    records: Iterable[RdiRecord],
    pairs: Sequence[tuple[str, str]] = DEFAULT_TEST_PAIRS,
) -> list[PairedTest]:
    """Signed-rank tests that the first-named heuristic of each pair has lower RDI."""
    per_heuristic: dict[str, dict[str, Fraction]] = {}
    for rec in records:
        per_heuristic.setdefault(rec.heuristic_id, {})[rec.graph_id] = rec.rdi
    tests = []
    for better, other in pairs:
        if better not in per_heuristic or other not in per_heuristic:
            continue
        graph_ids = sorted(per_heuristic[better])
        worse_vals = [per_heuristic[other][gid] for gid in graph_ids]
        better_vals = [per_heuristic[better][gid] for gid in graph_ids]
        result = wilcoxon_one_sided(worse_vals, better_vals)
        tests.append(PairedTest(better, other, result, bonferroni(result.p_value, len(pairs))))
    return tests


@dataclass(frozen=True)
class ExperimentReport:
    n_graphs: int
    summaries: list[HeuristicSummary]
    records: list[RdiRecord]
    tests: list[PairedTest]
    config: dict
    manifest_hash: str | None
    timing: "list[TimingRow] | None" = None


def _evaluate_one(args: tuple) -> list[RdiRecord]:
    entry, heuristic_ids, run_seed = args
    return evaluate_graph(entry, heuristic_ids, run_seed)


def run_experiment(
    entries: Sequence[DatasetEntry],
    heuristic_ids: Sequence[str] = OPERATIONAL_IDS,
    run_seed: int = 0,
    jobs: int = 1,
    test_pairs: Sequence[tuple[str, str]] = DEFAULT_TEST_PAIRS,
    manifest_hash: str | None = None,
) -> ExperimentReport:
    """Evaluate a whole dataset; per-graph work may fan out over processes."""
    if not entries:
        raise ValueError("empty dataset")
    if not heuristic_ids:
        raise ValueError("at least one heuristic is required")
    tasks = [(entry, tuple(heuristic_ids), run_seed) for entry in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_evaluate_one, tasks, chunksize=8))
    else:
        chunks = [_evaluate_one(t) for t in tasks]
    records = [rec for chunk in sorted(chunks, key=lambda ch: ch[0].graph_id) for rec in chunk]
    summaries, records = summarize(records)
    tests = run_rank_tests(records, test_pairs) if len(entries) >= 2 else []
    config = {
        "heuristics": list(heuristic_ids),
        "seed": run_seed,
        "jobs": jobs,
        "test_pairs": [list(p) for p in test_pairs],
    }
    return ExperimentReport(len(entries), summaries, records, tests, config, manifest_hash)


@dataclass(frozen=True)
class TimingSample:
    order: int
    heuristic_id: str
    graph_id: str
    millis: float


def timing_benchmark(
    entries: Sequence[DatasetEntry],
    heuristic_ids: Sequence[str] = OPERATIONAL_IDS,
    repetitions: int = 1,
    run_seed: int = 0,
) -> list[TimingSample]:
    """Wall-clock time of each heuristic alone (no classification, no scoring).

    Each sample is the best of ``repetitions`` runs on one graph.
    """
    if not entries:
        raise ValueError("empty dataset")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    samples = []
    for entry in entries:
        for hid in heuristic_ids:
            seed = stable_seed(run_seed, entry.graph_id) if hid == "random" else None
            best = math.inf
            for _ in range(repetitions):
                start = time.perf_counter()
                apply_heuristic(hid, entry.graph, seed=seed)
                elapsed = (time.perf_counter() - start) * 1e3
                if elapsed < best:
                    best = elapsed
            samples.append(TimingSample(entry.order, hid, entry.graph_id, best))
    return samples


@dataclass(frozen=True)
class TimingRow:
    order: int
    heuristic_id: str
    n_graphs: int
    min_ms: float
    max_ms: float
    median_ms: float
    mean_ms: float
    sd_ms: float


def timing_table(samples: Iterable[TimingSample]) -> list[TimingRow]:
    """Aggregate raw samples into per-(order, heuristic) rows."""
    groups: dict[tuple[int, str], list[float]] = {}
    for s in samples:
        groups.setdefault((s.order, s.heuristic_id), []).append(s.millis)
    rows = []
    for (order, hid), values in sorted(
        groups.items(), key=lambda kv: (kv[0][0], _heuristic_sort_key(kv[0][1]))
    ):
        rows.append(
            TimingRow(
                order,
                hid,
                len(values),
                min(values),
                max(values),
                statistics.median(values),
                statistics.fmean(values),
                statistics.pstdev(values),
            )
        )
    return rows
