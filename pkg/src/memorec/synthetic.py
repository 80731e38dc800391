"""Seeded synthetic metamodel corpora for tests and benchmarks.

Two flavors share global class/feature vocabularies: a clustered corpus
whose metamodels draw most of their names from a per-cluster core, and
an unclustered corpus drawing uniformly from the whole vocabulary.
"""

from __future__ import annotations

import json
import random

from .corpus import ACCEPTED, CorpusIndex, SourceRecord
from .encoder import EncodingScheme
from .jsonmodel import parse_json_model
from .model import Metamodel

FEATURE_VOCAB_SIZE = 150
CLASS_VOCAB_SIZE = 60
CLASSES_PER_MODEL = 5
FEATURES_PER_CLASS = 6


def feature_vocabulary(size: int = FEATURE_VOCAB_SIZE) -> list[str]:
    return [f"feat{i:03d}" for i in range(size)]


def class_vocabulary(size: int = CLASS_VOCAB_SIZE) -> list[str]:
    return [f"Cls{i:03d}" for i in range(size)]


def _mixed_sample(
    count: int, core: list[str], vocab: list[str], core_share: float, rng: random.Random
) -> list[str]:
    """`count` distinct names, core_share of them from the core pool."""
    n_core = min(round(count * core_share), len(core))
    picked = rng.sample(core, n_core)
    rest = [v for v in vocab if v not in picked]
    picked += rng.sample(rest, count - n_core)
    rng.shuffle(picked)
    return picked


def _build_model(name: str, classes: list[tuple[str, list[str]]], rng: random.Random) -> Metamodel:
    doc = {
        "source": name,
        "packages": [
            {
                "name": f"pkg_{name}",
                "classes": [
                    {
                        "name": cls_name,
                        "features": [
                            {"name": f, "kind": rng.choice(["attribute", "reference"])}
                            for f in feats
                        ],
                    }
                    for cls_name, feats in classes
                ],
            }
        ],
    }
    # serialize/reparse so ids are content hashes like any ingested model
    return parse_json_model(json.dumps(doc, sort_keys=True).encode("utf-8"), name)


def _sample_model(
    name: str,
    feature_core: list[str],
    class_core: list[str],
    core_share: float,
    rng: random.Random,
) -> Metamodel:
    feature_vocab = feature_vocabulary()
    class_vocab = class_vocabulary()
    class_names = _mixed_sample(
        CLASSES_PER_MODEL, class_core, class_vocab, core_share, rng
    )
    classes = [
        (
            cls_name,
            _mixed_sample(FEATURES_PER_CLASS, feature_core, feature_vocab, core_share, rng),
        )
        for cls_name in class_names
    ]
    return _build_model(name, classes, rng)


def clustered_corpus(
    n_clusters: int = 5,
    per_cluster: int = 20,
    core_share: float = 0.7,
    seed: int = 0,
) -> list[Metamodel]:
    """Clusters of metamodels drawing `core_share` of their class and
    feature names from shared per-cluster cores."""
    rng = random.Random(seed)
    feature_vocab = feature_vocabulary()
    class_vocab = class_vocabulary()
    feature_core_size = FEATURE_VOCAB_SIZE // n_clusters
    class_core_size = CLASS_VOCAB_SIZE // n_clusters
    out = []
    for c in range(n_clusters):
        feature_core = rng.sample(feature_vocab, feature_core_size)
        class_core = rng.sample(class_vocab, class_core_size)
        for i in range(per_cluster):
            out.append(
                _sample_model(f"C{c}M{i}", feature_core, class_core, core_share, rng)
            )
    return out


def unclustered_corpus(total: int = 100, seed: int = 0) -> list[Metamodel]:
    """Equal-size corpus over the same vocabularies, no shared cores."""
    rng = random.Random(seed)
    return [_sample_model(f"U{i}", [], [], 0.0, rng) for i in range(total)]


def index_from_models(
    models: list[Metamodel],
    schemes: tuple[EncodingScheme, ...] = tuple(EncodingScheme),
) -> CorpusIndex:
    """Wrap in-memory metamodels in a CorpusIndex (all accepted)."""
    return CorpusIndex(
        tuple(schemes),
        {m.id: m for m in models},
        [SourceRecord(m.source_uri, ACCEPTED, m.id) for m in models],
    )
