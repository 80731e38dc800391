"""Ten-fold offline evaluation: fold splitting, query construction,
ranking metrics, timing, and report emission (CSV, JSON, figures).

All randomness flows from one seed; per-metamodel choices are derived
from (seed, metamodel id) so they survive reordering. Query timing uses
an injectable clock so reports can be made fully deterministic in tests.
"""

from __future__ import annotations

import hashlib
import io
import json
import platform
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .corpus import CorpusIndex
from .encoder import EncodedMetamodel, EncodingScheme, encode
from .engine import Recommender
from .errors import CorpusTooSmall, EmptyCaseSet
from .model import Metamodel


@dataclass(frozen=True)
class EvalConfig:
    scheme: EncodingScheme
    k: int = 5
    k_contexts: int = 5
    folds: int = 10
    cutoffs: tuple[int, ...] = (1, 5, 10, 15, 20)
    seed: int = 42

    def __post_init__(self) -> None:
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if not self.cutoffs or list(self.cutoffs) != sorted(set(self.cutoffs)):
            raise ValueError("cutoffs must be non-empty and strictly increasing")
        if min(self.cutoffs) < 1 or self.k < 1 or self.k_contexts < 1:
            raise ValueError("k, kContexts and cutoffs must be positive")


@dataclass(frozen=True)
class QueryCase:
    metamodel_id: str
    active_context: str
    query_items: tuple[str, ...]
    ground_truth: frozenset[str]


@dataclass(frozen=True)
class FoldMetrics:
    fold: int
    n: int
    success_rate: float
    precision: float
    recall: float
    f1: float


@dataclass
class MetricsReport:
    config: EvalConfig
    rows: list[FoldMetrics]
    fold_query_ms: dict[int, float]
    cases_per_fold: dict[int, int]
    host: str = field(default_factory=lambda: platform.platform())

    def aggregate(self, n: int) -> FoldMetrics:
        """Mean across folds for one cut-off."""
        rows = [r for r in self.rows if r.n == n]
        count = len(rows)
        return FoldMetrics(
            fold=-1,
            n=n,
            success_rate=sum(r.success_rate for r in rows) / count,
            precision=sum(r.precision for r in rows) / count,
            recall=sum(r.recall for r in rows) / count,
            f1=sum(r.f1 for r in rows) / count,
        )


def split_folds(
    ids: Sequence[str], folds: int, seed: int
) -> list[tuple[list[str], list[str]]]:
    """Seeded shuffle, then partition into (training, testing) pairs.

    Fold sizes differ by at most 1; each id is in testing exactly once.
    """
    if len(ids) < folds:
        raise CorpusTooSmall(f"{len(ids)} metamodels for {folds} folds")
    shuffled = list(ids)
    random.Random(seed).shuffle(shuffled)
    buckets: list[list[str]] = [[] for _ in range(folds)]
    for i, mid in enumerate(shuffled):
        buckets[i % folds].append(mid)
    out = []
    for i in range(folds):
        testing = buckets[i]
        training = [mid for j, b in enumerate(buckets) if j != i for mid in b]
        out.append((training, testing))
    return out


def _case_rng(seed: int, metamodel_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{metamodel_id}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def make_query_case(
    m: Metamodel, scheme: EncodingScheme, seed: int
) -> QueryCase | None:
    """Pick a seeded random context with >= 2 items; keep the first
    declared item as the query, the rest as ground truth.

    Returns None (skip) when no context qualifies.
    """
    enc = encode(m, scheme)
    eligible = [c for c in enc.known_contexts if len(enc.items_of(c)) >= 2]
    if not eligible:
        return None
    context = _case_rng(seed, m.id).choice(eligible)
    items = enc.items_of(context)
    return QueryCase(m.id, context, (items[0],), frozenset(items[1:]))


def reduce_encoding(enc: EncodedMetamodel, case: QueryCase) -> EncodedMetamodel:
    """Remove the ground-truth items from the active context's pairs,
    mimicking a partially specified metamodel."""
    pairs = tuple(
        p
        for p in enc.pairs
        if not (p.context == case.active_context and p.item in case.ground_truth)
    )
    return EncodedMetamodel(enc.metamodel_id, enc.scheme, pairs, enc.known_contexts)


def success_rate_at_n(tp_counts: Sequence[int]) -> float:
    """Share of queries with at least one true positive."""
    if not tp_counts:
        raise EmptyCaseSet("no query cases")
    return sum(1 for c in tp_counts if c > 0) / len(tp_counts)


def precision_recall_f1(
    tp_count: int, n: int, gt_size: int
) -> tuple[float, float, float]:
    """precision = TP/N, recall = TP/|GT|, F1 their harmonic mean."""
    precision = tp_count / n
    recall = tp_count / gt_size if gt_size else 0.0
    if precision + recall == 0.0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def run_evaluation(
    index: CorpusIndex,
    config: EvalConfig,
    clock: Callable[[], float] = time.perf_counter,
) -> MetricsReport:
    """Cross-validate the recommender over the corpus.

    Per fold: train on the other folds only, answer one query case per
    testing metamodel, time each query, compute metrics per cut-off.
    """
    if config.scheme not in index.encoded:
        index.encoded[config.scheme] = [
            encode(m, config.scheme) for m in index.metamodels.values()
        ]
    enc_by_id = {e.metamodel_id: e for e in index.encoded[config.scheme]}
    ids = list(index.metamodels)
    rows: list[FoldMetrics] = []
    fold_ms: dict[int, float] = {}
    cases_per_fold: dict[int, int] = {}
    max_n = max(config.cutoffs)

    for fold, (training, testing) in enumerate(
        split_folds(ids, config.folds, config.seed)
    ):
        engine = Recommender(
            config.scheme, tuple(enc_by_id[mid] for mid in training)
        )
        results: list[tuple[QueryCase, list[str]]] = []
        elapsed = 0.0
        for mid in testing:
            case = make_query_case(index.metamodels[mid], config.scheme, config.seed)
            if case is None:
                continue
            active = reduce_encoding(enc_by_id[mid], case)
            t0 = clock()
            ranked = engine.recommend_encoded(
                active, case.active_context, config.k, config.k_contexts, max_n
            )
            elapsed += clock() - t0
            results.append((case, ranked.items()))
        cases_per_fold[fold] = len(results)
        fold_ms[fold] = 1000.0 * elapsed / len(results) if results else 0.0
        for n in config.cutoffs:
            tps = [len(case.ground_truth & set(items[:n])) for case, items in results]
            if not tps:
                rows.append(FoldMetrics(fold, n, 0.0, 0.0, 0.0, 0.0))
                continue
            prf = [
                precision_recall_f1(tp, n, len(case.ground_truth))
                for tp, (case, _) in zip(tps, results)
            ]
            rows.append(
                FoldMetrics(
                    fold,
                    n,
                    success_rate_at_n(tps),
                    sum(p for p, _, _ in prf) / len(prf),
                    sum(r for _, r, _ in prf) / len(prf),
                    sum(f for _, _, f in prf) / len(prf),
                )
            )
    return MetricsReport(config, rows, fold_ms, cases_per_fold)


def report_csv(report: MetricsReport) -> str:
    """CSV report: one row per (fold, N) plus an aggregate section."""
    cfg = report.config
    buf = io.StringIO()
    buf.write(f"# host: {report.host}\n")
    buf.write("fold,scheme,k,kContexts,N,SR,precision,recall,f1,meanQueryMs\n")

    def row(label: str, r: FoldMetrics, ms: float) -> None:
        buf.write(
            f"{label},{cfg.scheme.value},{cfg.k},{cfg.k_contexts},{r.n},"
            f"{r.success_rate:.6f},{r.precision:.6f},{r.recall:.6f},"
            f"{r.f1:.6f},{ms:.6f}\n"
        )

    for r in report.rows:
        row(str(r.fold), r, report.fold_query_ms[r.fold])
    buf.write("# aggregate (mean over folds)\n")
    mean_ms = (
        sum(report.fold_query_ms.values()) / len(report.fold_query_ms)
        if report.fold_query_ms
        else 0.0
    )
    for n in cfg.cutoffs:
        row("all", report.aggregate(n), mean_ms)
    return buf.getvalue()


def report_json(report: MetricsReport) -> dict:
    cfg = report.config
    return {
        "host": report.host,
        "config": {
            "scheme": cfg.scheme.value,
            "k": cfg.k,
            "kContexts": cfg.k_contexts,
            "folds": cfg.folds,
            "cutoffs": list(cfg.cutoffs),
            "seed": cfg.seed,
        },
        "folds": [
            {
                "fold": r.fold,
                "N": r.n,
                "SR": r.success_rate,
                "precision": r.precision,
                "recall": r.recall,
                "f1": r.f1,
                "meanQueryMs": report.fold_query_ms[r.fold],
                "cases": report.cases_per_fold[r.fold],
            }
            for r in report.rows
        ],
        "aggregate": [
            {
                "N": n,
                "SR": report.aggregate(n).success_rate,
                "precision": report.aggregate(n).precision,
                "recall": report.aggregate(n).recall,
                "f1": report.aggregate(n).f1,
            }
            for n in cfg.cutoffs
        ],
    }


def render_report_figures(report: MetricsReport, out_prefix: str | Path) -> list[Path]:
    """Render metric-vs-N and per-fold timing figures next to the
    delimited reports. Returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    prefix = Path(out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    cutoffs = list(report.config.cutoffs)
    aggs = [report.aggregate(n) for n in cutoffs]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(cutoffs, [a.success_rate for a in aggs], marker="o", label="SR@N")
    ax.plot(cutoffs, [a.precision for a in aggs], marker="s", label="precision")
    ax.plot(cutoffs, [a.recall for a in aggs], marker="^", label="recall")
    ax.plot(cutoffs, [a.f1 for a in aggs], marker="d", label="F1")
    ax.set_xlabel("cut-off N")
    ax.set_ylabel("mean over folds")
    ax.set_title(
        f"{report.config.scheme.value}, k={report.config.k}, "
        f"kContexts={report.config.k_contexts}"
    )
    ax.set_ylim(bottom=0)
    ax.legend()
    ax.grid(True, alpha=0.3)
    metrics_path = prefix.with_name(prefix.name + "_metrics.png")
    fig.savefig(metrics_path, dpi=120, bbox_inches="tight")
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    folds = sorted(report.fold_query_ms)
    ax.bar([str(f) for f in folds], [report.fold_query_ms[f] for f in folds])
    ax.set_xlabel("fold")
    ax.set_ylabel("mean query time (ms)")
    ax.set_title("Recommendation time per fold")
    timing_path = prefix.with_name(prefix.name + "_timing.png")
    fig.savefig(timing_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [metrics_path, timing_path]


def write_reports(
    report: MetricsReport, out_prefix: str | Path, figures: bool = True
) -> list[Path]:
    """Write CSV + JSON (+ figures) with a common path prefix."""
    prefix = Path(out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    csv_path = prefix.with_name(prefix.name + ".csv")
    json_path = prefix.with_name(prefix.name + ".json")
    csv_path.write_text(report_csv(report), encoding="utf-8")
    json_path.write_text(
        json.dumps(report_json(report), indent=2), encoding="utf-8"
    )
    written = [csv_path, json_path]
    if figures:
        written += render_report_figures(report, prefix)
    return written
