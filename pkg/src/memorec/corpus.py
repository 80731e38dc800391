"""Corpus ingestion, content-hash deduplication, and index persistence.

Ingestion reads `.ecore` and `.json` files from a directory tree;
unparsable files are logged and skipped, byte-identical files are
deduplicated keeping the lexicographically first source path.
"""

from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .ecore import parse_ecore_xmi
from .encoder import EncodedMetamodel, EncodingScheme, encode
from .errors import CorruptIndex, IoFailure, MemorecError, VersionMismatch
from .jsonmodel import model_to_dict, parse_json_model
from .model import Metamodel, content_hash
from .simgraph import SimilarityGraph, build_graph

log = logging.getLogger(__name__)

INDEX_MAGIC = "MEMOREC-IDX"
INDEX_VERSION = 1

ACCEPTED = "accepted"
DUPLICATE = "duplicate"
UNPARSABLE = "unparsable"


@dataclass(frozen=True)
class SourceRecord:
    source_uri: str
    status: str  # accepted | duplicate | unparsable
    metamodel_id: str = ""


@dataclass
class CorpusIndex:
    schemes: tuple[EncodingScheme, ...]
    metamodels: dict[str, Metamodel]  # id -> model, insertion-ordered
    source_log: list[SourceRecord]
    encoded: dict[EncodingScheme, list[EncodedMetamodel]] = field(default_factory=dict)
    graphs: dict[EncodingScheme, SimilarityGraph] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.encoded:
            self._build_derived()

    def _build_derived(self) -> None:
        for scheme in self.schemes:
            encs = [encode(m, scheme) for m in self.metamodels.values()]
            self.encoded[scheme] = encs
            self.graphs[scheme] = build_graph(encs)

    @property
    def size(self) -> int:
        return len(self.metamodels)


def _parse_file(data: bytes, uri: str) -> Metamodel:
    if uri.endswith(".json"):
        return parse_json_model(data, uri)
    return parse_ecore_xmi(data, uri)


def ingest_directory(
    path: str | Path, schemes: tuple[EncodingScheme, ...] = tuple(EncodingScheme)
) -> CorpusIndex:
    """Scan a directory tree for .ecore/.json files and build an index.

    Per-file failures degrade to source-log entries; only an unreadable
    directory is fatal (IoFailure).
    """
    root = Path(path)
    try:
        files = sorted(
            p for p in root.rglob("*") if p.is_file() and p.suffix in (".ecore", ".json")
        )
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    if not root.is_dir():
        raise IoFailure(f"not a readable directory: {root}")

    metamodels: dict[str, Metamodel] = {}
    records: list[SourceRecord] = []
    for p in files:
        uri = p.as_posix()
        try:
            data = p.read_bytes()
        except OSError as exc:
            log.warning("%s: unreadable (%s)", uri, exc)
            records.append(SourceRecord(uri, UNPARSABLE))
            continue
        digest = content_hash(data)
        if digest in metamodels:
            records.append(SourceRecord(uri, DUPLICATE, digest))
            continue
        try:
            m = _parse_file(data, uri)
        except MemorecError as exc:
            log.warning("%s: skipped (%s)", uri, exc)
            records.append(SourceRecord(uri, UNPARSABLE))
            continue
        metamodels[m.id] = m
        records.append(SourceRecord(uri, ACCEPTED, m.id))
    return CorpusIndex(tuple(schemes), metamodels, records)


def ingestion_report_csv(index: CorpusIndex) -> str:
    """CSV `sourceUri,status,id`, one row per candidate file."""
    buf = io.StringIO()
    buf.write("sourceUri,status,id\n")
    for rec in index.source_log:
        buf.write(f"{rec.source_uri},{rec.status},{rec.metamodel_id}\n")
    return buf.getvalue()


def save_index(index: CorpusIndex, path: str | Path) -> None:
    doc = {
        "magic": INDEX_MAGIC,
        "version": INDEX_VERSION,
        "schemes": [s.value for s in index.schemes],
        "metamodels": [
            {"id": m.id, "source": m.source_uri, **model_to_dict(m)}
            for m in index.metamodels.values()
        ],
        "source_log": [
            {"source": r.source_uri, "status": r.status, "id": r.metamodel_id}
            for r in index.source_log
        ],
    }
    try:
        Path(path).write_text(json.dumps(doc, sort_keys=True), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _metamodel_from_entry(entry: dict) -> Metamodel:
    # reuse the JSON-format parser for the package tree, keep stored id
    parsed = parse_json_model(
        json.dumps({"packages": entry["packages"]}).encode("utf-8"),
        entry.get("source", ""),
    )
    return Metamodel(entry["id"], entry.get("source", ""), parsed.packages)


def load_index(path: str | Path) -> CorpusIndex:
    """Load an index written by save_index.

    Raises IoFailure, CorruptIndex, or VersionMismatch.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptIndex(f"{path}: not valid JSON") from exc
    if not isinstance(doc, dict) or doc.get("magic") != INDEX_MAGIC:
        raise CorruptIndex(f"{path}: wrong magic header")
    if doc.get("version") != INDEX_VERSION:
        raise VersionMismatch(
            f"{path}: format version {doc.get('version')}, expected {INDEX_VERSION}"
        )
    try:
        schemes = tuple(EncodingScheme(s) for s in doc["schemes"])
        metamodels: dict[str, Metamodel] = {}
        for entry in doc["metamodels"]:
            m = _metamodel_from_entry(entry)
            metamodels[m.id] = m
        records = [
            SourceRecord(r["source"], r["status"], r.get("id", ""))
            for r in doc["source_log"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptIndex(f"{path}: {exc}") from exc
    return CorpusIndex(schemes, metamodels, records)
