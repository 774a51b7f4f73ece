"""Command-line entry point.

Subcommands: ``generate`` (build a dataset), ``recommend`` (run heuristics
on one graph), ``evaluate`` (full RDI/MRDI experiment on a dataset), and
``bench`` (heuristic timing table). Exit codes: 0 success, 1 usage error,
2 data error, 3 budget or quota error.

Every randomized path demands an explicit ``--seed``; there is no silent
entropy source, and the seed is recorded in every output header.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .evaluation import run_experiment, timing_benchmark, timing_table
from .generators import DatasetSpec, QuotaError, build_dataset, load_dataset, write_dataset
from .graph import SimpleGraph, is_connected, non_adjacent_pairs
from .graphio import load_graph
from .heuristics import (
    OPERATIONAL_IDS,
    POST_HOC_SOURCE,
    apply_heuristic,
    derive_post_hoc,
)
from .reliability import (
    ENUMERATION_BUDGET,
    EnumerationBudgetError,
    classify_subsets,
    count_connected,
    evaluate_polynomial,
    recount_for_insertion,
    score_integral,
)
from . import report as report_io

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BUDGET = 3

ALL_IDS = OPERATIONAL_IDS + tuple(POST_HOC_SOURCE)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_orders(text: str) -> tuple[int, ...]:
    try:
        orders = tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise UsageError(f"bad --orders value {text!r}") from None
    if not orders:
        raise UsageError("--orders needs at least one vertex count")
    return orders


def _parse_heuristics(text: str, allow_post_hoc: bool) -> tuple[str, ...]:
    ids = tuple(part.strip() for part in text.split(",") if part.strip())
    if not ids:
        raise UsageError("--heuristics needs at least one identifier")
    valid = ALL_IDS if allow_post_hoc else OPERATIONAL_IDS
    for hid in ids:
        if hid not in valid:
            raise UsageError(f"unknown heuristic {hid!r} (valid: {', '.join(valid)})")
    return ids


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vertrel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a random-graph dataset")
    gen.add_argument("--out", required=True, help="output dataset directory")
    gen.add_argument("--orders", required=True, help="comma-separated vertex counts")
    gen.add_argument("--er", type=int, default=0, help="edge-probability graphs per order")
    gen.add_argument("--ba", type=int, default=0, help="preferential-attachment graphs per order")
    gen.add_argument("--ws", type=int, default=0, help="ring-rewiring graphs per order")
    gen.add_argument("--er-p", type=float, default=0.3)
    gen.add_argument("--ba-m", type=int, default=2)
    gen.add_argument("--ws-k", type=int, default=4)
    gen.add_argument("--ws-beta", type=float, default=0.2)
    gen.add_argument("--seed", required=True, type=int, help="master seed (mandatory)")
    gen.add_argument("--max-attempts", type=int, default=100_000)
    gen.set_defaults(func=cmd_generate)

    rec = sub.add_parser("recommend", help="run heuristics on one graph file")
    rec.add_argument("graph", help="input graph (.el or .g6)")
    rec.add_argument("--heuristics", default=",".join(OPERATIONAL_IDS))
    rec.add_argument("--exact", action="store_true", help="score candidates exactly")
    rec.add_argument("--p", type=float, default=0.9, help="survival probability for reporting")
    rec.add_argument("--seed", type=int, default=None)
    rec.add_argument("--format", choices=("csv", "json"), default="csv")
    rec.add_argument("--out", default=None, help="output file (default: stdout)")
    rec.set_defaults(func=cmd_recommend)

    ev = sub.add_parser("evaluate", help="full experiment over a dataset directory")
    ev.add_argument("dataset", help="dataset directory with manifest.json")
    ev.add_argument("--out", required=True, help="report output directory")
    ev.add_argument("--heuristics", default=",".join(OPERATIONAL_IDS))
    ev.add_argument("--seed", required=True, type=int)
    ev.add_argument("--jobs", type=int, default=1)
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    ev.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True)
    ev.set_defaults(func=cmd_evaluate)

    bench = sub.add_parser("bench", help="heuristic timing table over a dataset")
    bench.add_argument("dataset")
    bench.add_argument("--out", required=True)
    bench.add_argument("--heuristics", default=",".join(OPERATIONAL_IDS))
    bench.add_argument("--repetitions", type=int, default=1)
    bench.add_argument("--seed", required=True, type=int)
    bench.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True)
    bench.set_defaults(func=cmd_bench)

    return parser


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = DatasetSpec(
            orders=_parse_orders(args.orders),
            er_count=args.er,
            ba_count=args.ba,
            ws_count=args.ws,
            master_seed=args.seed,
            er_p=args.er_p,
            ba_m=args.ba_m,
            ws_k=args.ws_k,
            ws_beta=args.ws_beta,
            max_attempts=args.max_attempts,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    entries, stats = build_dataset(spec)
    manifest = write_dataset(entries, spec, stats, args.out)
    total_attempts = sum(s.attempts for s in stats)
    print(
        f"wrote {len(entries)} graphs to {args.out} "
        f"({total_attempts} attempts, manifest {manifest['manifest_hash'][:12]})"
    )
    return EXIT_OK


def _load_connected_graph(path: str) -> SimpleGraph:
    g = load_graph(path)
    if not is_connected(g):
        raise ValueError(f"graph in {path} is disconnected")
    if not non_adjacent_pairs(g):
        raise ValueError(f"graph in {path} is complete: no insertion possible")
    return g


def cmd_recommend(args: argparse.Namespace) -> int:
    ids = _parse_heuristics(args.heuristics, allow_post_hoc=True)
    post_hoc = [hid for hid in ids if hid in POST_HOC_SOURCE]
    if post_hoc and not args.exact:
        raise UsageError(f"{post_hoc[0]} needs --exact (it selects by exact score)")
    if "random" in ids and args.seed is None:
        raise UsageError("--seed is required when the random heuristic is selected")
    if not 0.0 <= args.p <= 1.0:
        raise UsageError(f"--p must be in [0, 1], got {args.p}")

    g = _load_connected_graph(args.graph)
    operational = [hid for hid in ids if hid not in POST_HOC_SOURCE]
    needed = set(operational) | {POST_HOC_SOURCE[hid] for hid in post_hoc}
    results = {hid: apply_heuristic(hid, g, seed=args.seed) for hid in sorted(needed)}

    scores: dict = {}
    base_r = None
    if args.exact:
        cls = classify_subsets(g)
        pool = {e for res in results.values() for e in res.candidates}
        profiles = {e: recount_for_insertion(g, cls, e) for e in pool}
        scores = {e: score_integral(prof) for e, prof in profiles.items()}
        base_r = evaluate_polynomial(count_connected(cls), args.p)
        for hid in post_hoc:
            results[hid] = derive_post_hoc(results[POST_HOC_SOURCE[hid]], scores, hid)

    rows = []
    for hid in ids:
        res = results[hid]
        for e in res.candidates:
            row = {
                "heuristic": hid,
                "i": e.i,
                "j": e.j,
                "criterion": _criterion_str(res.metadata.get(e)),
            }
            if args.exact:
                score = scores[e]
                row["score"] = f"{score.numerator}/{score.denominator}"
                row["reliability_at_p"] = f"{evaluate_polynomial(profiles[e], args.p):.5f}"
            rows.append(row)

    out = open(args.out, "w", encoding="ascii", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            payload = {"graph": args.graph, "p": args.p, "candidates": rows}
            if base_r is not None:
                payload["base_reliability_at_p"] = round(base_r, 5)
            json.dump(payload, out, indent=2, sort_keys=True)
            out.write("\n")
        else:
            fields = ["heuristic", "i", "j", "criterion"]
            if args.exact:
                fields += ["score", "reliability_at_p"]
                out.write(f"# base_reliability_at_p: {base_r:.5f}\n")
            writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _criterion_str(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.9f}"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, tuple):
        return "|".join(_criterion_str(v) for v in value)
    return str(value)


def _check_budget(entries) -> None:
    over = [e.graph_id for e in entries if e.graph.n > ENUMERATION_BUDGET]
    if over:
        raise EnumerationBudgetError(
            f"{len(over)} graphs exceed the n <= {ENUMERATION_BUDGET} enumeration budget"
        )


def cmd_evaluate(args: argparse.Namespace) -> int:
    ids = _parse_heuristics(args.heuristics, allow_post_hoc=False)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    entries, manifest = load_dataset(args.dataset)
    _check_budget(entries)
    report = run_experiment(
        entries,
        heuristic_ids=ids,
        run_seed=args.seed,
        jobs=args.jobs,
        manifest_hash=manifest["manifest_hash"],
    )
    meta = {e.graph_id: {"model": e.model, "order": e.order} for e in entries}

    os.makedirs(args.out, exist_ok=True)
    report_io.write_report_json(report, os.path.join(args.out, "report.json"), meta)
    if args.format == "csv":
        report_io.write_summary_csv(report, os.path.join(args.out, "summary.csv"))
        report_io.write_rdi_csv(report, os.path.join(args.out, "rdi.csv"), meta)
        report_io.write_graph_rdi_csv(report, os.path.join(args.out, "rdi_graphs.csv"), meta)
        report_io.write_tests_csv(report, os.path.join(args.out, "tests.csv"))
    if args.figures:
        from .figures import rdi_boxplot

        rdi_boxplot(report.records, os.path.join(args.out, "rdi_boxplot.png"))

    best = min(report.summaries, key=lambda s: s.mrdi)
    print(f"evaluated {report.n_graphs} graphs; best heuristic: {best.heuristic_id} "
          f"(MRDI {float(best.mrdi):.6f})")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    ids = _parse_heuristics(args.heuristics, allow_post_hoc=False)
    if args.repetitions < 1:
        raise UsageError("--repetitions must be at least 1")
    entries, manifest = load_dataset(args.dataset)
    samples = timing_benchmark(entries, ids, repetitions=args.repetitions, run_seed=args.seed)
    rows = timing_table(samples)
    config = {
        "heuristics": list(ids),
        "repetitions": args.repetitions,
        "seed": args.seed,
    }
    os.makedirs(args.out, exist_ok=True)
    report_io.write_timing_csv(
        rows, os.path.join(args.out, "timing.csv"), config, manifest["manifest_hash"]
    )
    report_io.write_timing_json(
        rows, os.path.join(args.out, "timing.json"), config, manifest["manifest_hash"]
    )
    if args.figures:
        from .figures import timing_boxplot

        timing_boxplot(samples, os.path.join(args.out, "timing_boxplot.png"))
    print(f"benchmarked {len(ids)} heuristics on {len(entries)} graphs -> {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vertrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuotaError, EnumerationBudgetError) as exc:
        print(f"vertrel: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, KeyError) as exc:
        print(f"vertrel: {exc}", file=sys.stderr)
        return EXIT_DATA


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
