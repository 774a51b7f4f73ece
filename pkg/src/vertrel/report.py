"""Report files: CSV tables plus a JSON bundle.

Every file starts with ``#``-prefixed header lines carrying the full run
configuration and the dataset manifest hash, so outputs are self-describing
and two runs with identical configuration produce identical bytes (timing
tables excepted: wall-clock values are not reproducible).
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction
from typing import Sequence, TextIO

from .evaluation import ExperimentReport, TimingRow


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _write_header(fh: TextIO, kind: str, config: dict, manifest_hash: str | None) -> None:
    fh.write(f"# vertrel {kind}\n")
    fh.write(f"# config: {json.dumps(config, sort_keys=True, separators=(',', ':'))}\n")
    fh.write(f"# manifest_hash: {manifest_hash or 'none'}\n")


def write_summary_csv(report: ExperimentReport, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        _write_header(fh, "summary", report.config, report.manifest_hash)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["heuristic", "insertions", "best", "unique", "mrdi", "mrdi_float", "sd_rdi"]
        )
        for s in report.summaries:
            writer.writerow(
                [
                    s.heuristic_id,
                    s.insertions,
                    s.best,
                    s.unique,
                    _frac(s.mrdi),
                    f"{float(s.mrdi):.6f}",
                    f"{s.sd_rdi:.6f}",
                ]
            )
        fh.write(
            "# note: sd_rdi is the population SD over per-insertion RDIs;"
            " a per-graph-RDI variant is derivable from rdi.csv\n"
        )


def write_rdi_csv(
    report: ExperimentReport,
    path: str | os.PathLike,
    graph_meta: dict[str, dict] | None = None,
) -> None:
    """Per-insertion table: every scored insertion of every heuristic."""
    graph_meta = graph_meta or {}
    with open(path, "w", encoding="ascii", newline="") as fh:
        _write_header(fh, "rdi", report.config, report.manifest_hash)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["graph_id", "model", "order", "heuristic", "i", "j", "score", "rdi", "rdi_float"]
        )
        for rec in report.records:
            meta = graph_meta.get(rec.graph_id, {})
            for o in rec.outcomes:
                writer.writerow(
                    [
                        rec.graph_id,
                        meta.get("model", ""),
                        meta.get("order", ""),
                        rec.heuristic_id,
                        o.pair.i,
                        o.pair.j,
                        _frac(o.score),
                        _frac(o.rdi),
                        f"{float(o.rdi):.6f}",
                    ]
                )


def write_graph_rdi_csv(
    report: ExperimentReport,
    path: str | os.PathLike,
    graph_meta: dict[str, dict] | None = None,
) -> None:
    """Per-graph table: one row per (graph, heuristic) with its mean RDI."""
    graph_meta = graph_meta or {}
    with open(path, "w", encoding="ascii", newline="") as fh:
        _write_header(fh, "graph-rdi", report.config, report.manifest_hash)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["graph_id", "model", "order", "heuristic", "insertions", "rdi", "rdi_float",
             "f_best", "f_worst"]
        )
        for rec in report.records:
            meta = graph_meta.get(rec.graph_id, {})
            writer.writerow(
                [
                    rec.graph_id,
                    meta.get("model", ""),
                    meta.get("order", ""),
                    rec.heuristic_id,
                    len(rec.outcomes),
                    _frac(rec.rdi),
                    f"{float(rec.rdi):.6f}",
                    _frac(rec.f_best),
                    _frac(rec.f_worst),
                ]
            )


def write_tests_csv(report: ExperimentReport, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        _write_header(fh, "tests", report.config, report.manifest_hash)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["better", "other", "n_nonzero", "t_star", "p_value", "p_bonferroni", "r_effect", "method"]
        )
        for t in report.tests:
            writer.writerow(
                [
                    t.better,
                    t.other,
                    t.result.n_nonzero,
                    f"{t.result.t_star:.4f}",
                    f"{t.result.p_value:.6g}",
                    f"{t.p_bonferroni:.6g}",
                    f"{t.result.r_effect:.4f}",
                    t.result.method,
                ]
            )


def write_timing_csv(
    rows: Sequence[TimingRow],
    path: str | os.PathLike,
    config: dict,
    manifest_hash: str | None,
) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        _write_header(fh, "timing", config, manifest_hash)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["order", "heuristic", "n_graphs", "min_ms", "max_ms", "median_ms", "mean_ms", "sd_ms"]
        )
        for r in rows:
            writer.writerow(
                [
                    r.order,
                    r.heuristic_id,
                    r.n_graphs,
                    f"{r.min_ms:.4f}",
                    f"{r.max_ms:.4f}",
                    f"{r.median_ms:.4f}",
                    f"{r.mean_ms:.4f}",
                    f"{r.sd_ms:.4f}",
                ]
            )


def report_as_dict(report: ExperimentReport, graph_meta: dict[str, dict] | None = None) -> dict:
    graph_meta = graph_meta or {}
    payload = {
        "format": "vertrel-report/1",
        "config": report.config,
        "manifest_hash": report.manifest_hash,
        "n_graphs": report.n_graphs,
        "summaries": [
            {
                "heuristic": s.heuristic_id,
                "insertions": s.insertions,
                "best": s.best,
                "unique": s.unique,
                "mrdi": _frac(s.mrdi),
                "mrdi_float": float(s.mrdi),
                "sd_rdi": s.sd_rdi,
            }
            for s in report.summaries
        ],
        "tests": [
            {
                "better": t.better,
                "other": t.other,
                "n_nonzero": t.result.n_nonzero,
                "t_star": t.result.t_star,
                "p_value": t.result.p_value,
                "p_bonferroni": t.p_bonferroni,
                "r_effect": t.result.r_effect,
                "method": t.result.method,
            }
            for t in report.tests
        ],
        "records": [
            {
                "graph_id": rec.graph_id,
                "model": graph_meta.get(rec.graph_id, {}).get("model"),
                "order": graph_meta.get(rec.graph_id, {}).get("order"),
                "heuristic": rec.heuristic_id,
                "rdi": _frac(rec.rdi),
                "f_best": _frac(rec.f_best),
                "f_worst": _frac(rec.f_worst),
                "insertions": [
                    {"i": o.pair.i, "j": o.pair.j, "score": _frac(o.score), "rdi": _frac(o.rdi)}
                    for o in rec.outcomes
                ],
            }
            for rec in report.records
        ],
    }
    if report.timing is not None:
        payload["timing"] = [vars(r) for r in report.timing]
    return payload


def write_report_json(
    report: ExperimentReport,
    path: str | os.PathLike,
    graph_meta: dict[str, dict] | None = None,
) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        json.dump(report_as_dict(report, graph_meta), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_timing_json(
    rows: Sequence[TimingRow],
    path: str | os.PathLike,
    config: dict,
    manifest_hash: str | None,
) -> None:
    payload = {
        "format": "vertrel-timing/1",
        "config": config,
        "manifest_hash": manifest_hash,
        "rows": [vars(r) for r in rows],
    }
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
