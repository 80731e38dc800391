"""Command-line entry points: ingest, recommend, evaluate, serve.

Exit codes: 0 success; 1 I/O, parse, or corpus failures; 2 bad flags;
3 unknown context (recommend).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import corpus as corpus_mod
from .encoder import EncodingScheme
from .engine import RecommendationQuery, Recommender
from .errors import (
    CorpusTooSmall,
    IoFailure,
    MemorecError,
    UnknownContext,
)
from .evaluation import EvalConfig, run_evaluation, write_reports
from .jsonmodel import parse_json_model


def _parse_schemes(_ctx, _param, value: str) -> tuple[EncodingScheme, ...]:
    try:
        return tuple(EncodingScheme(s.strip()) for s in value.split(","))
    except ValueError as exc:
        raise click.UsageError(
            f"unknown scheme in {value!r}; valid: "
            + ",".join(s.value for s in EncodingScheme)
        ) from exc


def _parse_scheme(_ctx, _param, value: str) -> EncodingScheme:
    try:
        return EncodingScheme(value)
    except ValueError as exc:
        raise click.UsageError(
            f"unknown scheme {value!r}; valid: "
            + ",".join(s.value for s in EncodingScheme)
        ) from exc


def _parse_cutoffs(_ctx, _param, value: str) -> tuple[int, ...]:
    try:
        cutoffs = tuple(int(v) for v in value.split(","))
    except ValueError as exc:
        raise click.UsageError(f"bad cutoffs {value!r}") from exc
    if not cutoffs or list(cutoffs) != sorted(set(cutoffs)) or min(cutoffs) < 1:
        raise click.UsageError("cutoffs must be positive and strictly increasing")
    return cutoffs


def _load_index(path: str | None) -> corpus_mod.CorpusIndex:
    resolved = path or os.environ.get("MEMOREC_INDEX")
    if not resolved:
        raise click.UsageError("no index given (--index or MEMOREC_INDEX)")
    return corpus_mod.load_index(resolved)


@click.group()
def cli() -> None:
    """Metamodel completion recommender."""


@cli.command()
@click.option("--in", "in_dir", required=True, help="Directory of .ecore/.json files.")
@click.option("--out", "out_path", required=True, help="Index file to write.")
@click.option(
    "--schemes",
    default="SEs,IEs,SEc,IEc",
    callback=_parse_schemes,
    help="Comma-separated encoding schemes.",
)
@click.option("--report", "report_path", default=None, help="Ingestion report CSV path.")
def ingest(in_dir: str, out_path: str, schemes, report_path: str | None) -> None:
    """Ingest a directory of metamodel files into an index."""
    try:
        index = corpus_mod.ingest_directory(in_dir, schemes)
        corpus_mod.save_index(index, out_path)
        if report_path:
            Path(report_path).write_text(
                corpus_mod.ingestion_report_csv(index), encoding="utf-8"
            )
    except (IoFailure, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    counts = {status: 0 for status in ("accepted", "duplicate", "unparsable")}
    for rec in index.source_log:
        counts[rec.status] += 1
    click.echo(
        f"ingested {counts['accepted']} metamodels "
        f"({counts['duplicate']} duplicates, {counts['unparsable']} unparsable) "
        f"-> {out_path}"
    )


@cli.command()
@click.option("--index", "index_path", default=None, help="Index file (or MEMOREC_INDEX).")
@click.option("--model", "model_path", required=True, help="Partial model file (.json/.ecore).")
@click.option(
    "--context-kind",
    type=click.Choice(["class", "package"]),
    required=True,
)
@click.option("--context", required=True, help="Active context name.")
@click.option("--scheme", default="SEs", callback=_parse_scheme)
@click.option("--k", default=5, type=click.IntRange(min=1))
@click.option("--k-contexts", default=None, type=click.IntRange(min=1))
@click.option("--n", default=10, type=click.IntRange(min=0))
def recommend(
    index_path, model_path, context_kind, context, scheme, k, k_contexts, n
) -> None:
    """Print ranked recommendations as rank,item,score CSV."""
    expected_kind = "class" if scheme.class_context else "package"
    if context_kind != expected_kind:
        raise click.UsageError(
            f"scheme {scheme.value} expects a {expected_kind} context"
        )
    try:
        index = _load_index(index_path)
        data = Path(model_path).read_bytes()
        if model_path.endswith(".json"):
            model = parse_json_model(data, model_path)
        else:
            from .ecore import parse_ecore_xmi

            model = parse_ecore_xmi(data, model_path)
    except (MemorecError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    engine = Recommender(scheme, tuple(index.encoded[scheme]))
    query = RecommendationQuery(
        model, scheme, context, k=k, k_contexts=k_contexts or k, n=n
    )
    try:
        ranked = engine.recommend(query)
    except UnknownContext as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    for rank, (item, score) in enumerate(ranked.entries, start=1):
        click.echo(f"{rank},{item},{score:.6f}")


@cli.command()
@click.option("--index", "index_path", default=None, help="Index file (or MEMOREC_INDEX).")
@click.option("--scheme", default="SEs", callback=_parse_scheme)
@click.option("--k", default=5, type=click.IntRange(min=1))
@click.option("--k-contexts", default=None, type=click.IntRange(min=1))
@click.option("--cutoffs", default="1,5,10,15,20", callback=_parse_cutoffs)
@click.option("--folds", default=10, type=click.IntRange(min=2))
@click.option("--seed", default=42, type=int)
@click.option("--out-prefix", default="memorec_eval", help="Report path prefix.")
@click.option("--plots/--no-plots", default=True, help="Render figures next to the CSV.")
def evaluate(
    index_path, scheme, k, k_contexts, cutoffs, folds, seed, out_prefix, plots
) -> None:
    """Run k-fold cross-validation and write CSV/JSON reports."""
    try:
        index = _load_index(index_path)
        config = EvalConfig(
            scheme=scheme,
            k=k,
            k_contexts=k_contexts or k,
            folds=folds,
            cutoffs=cutoffs,
            seed=seed,
        )
        report = run_evaluation(index, config)
    except (CorpusTooSmall, IoFailure, MemorecError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for path in write_reports(report, out_prefix, figures=plots):
        click.echo(f"wrote {path}")


@cli.command()
@click.option("--index", "index_path", default=None, help="Index file (or MEMOREC_INDEX).")
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
@click.option("--k", default=5, type=click.IntRange(min=1))
@click.option("--k-contexts", default=None, type=click.IntRange(min=1))
@click.option("--n", default=10, type=click.IntRange(min=0))
def serve(index_path, host, port, k, k_contexts, n) -> None:
    """Serve the read-only recommendation HTTP API."""
    import uvicorn

    from .service import create_app

    try:
        index = _load_index(index_path)
    except MemorecError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    app = create_app(index, default_k=k, default_k_contexts=k_contexts or k, default_n=n)
    uvicorn.run(app, host=host, port=port)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
