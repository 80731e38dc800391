"""Weighted metamodel-item graph and the similarity functions over it.

An edge m -> f carries the number of times metamodel m includes item f.
Metamodel feature vectors are TF-IDF weighted (log base 10); metamodel
similarity is the cosine of those sparse vectors; context similarity is
the Jaccard index of item sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .encoder import EncodedMetamodel
from .errors import DuplicateMetamodelId, MixedSchemes, UnknownMetamodel

# sparse feature vector: item name -> weight
FeatureVector = dict[str, float]


@dataclass(frozen=True)
class SimilarityGraph:
    metamodel_ids: tuple[str, ...]
    # per-metamodel edge weights: id -> {item: multiplicity}
    weights: dict[str, dict[str, int]]
    # item -> number of distinct metamodels with an edge to it
    doc_freq: dict[str, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.metamodel_ids)

    @property
    def item_names(self) -> list[str]:
        return sorted(self.doc_freq)

    def edge_weight(self, metamodel_id: str, item: str) -> int:
        return self.weights.get(metamodel_id, {}).get(item, 0)


def build_graph(corpus: list[EncodedMetamodel]) -> SimilarityGraph:
    """Build the graph from same-scheme encodings.

    Raises MixedSchemes or DuplicateMetamodelId.
    """
    schemes = {enc.scheme for enc in corpus}
    if len(schemes) > 1:
        raise MixedSchemes(f"got schemes {sorted(s.value for s in schemes)}")
    weights: dict[str, dict[str, int]] = {}
    doc_freq: dict[str, int] = {}
    for enc in corpus:
        if enc.metamodel_id in weights:
            raise DuplicateMetamodelId(enc.metamodel_id)
        w: dict[str, int] = {}
        for pair in enc.pairs:
            w[pair.item] = w.get(pair.item, 0) + 1
        weights[enc.metamodel_id] = w
        for item in w:
            doc_freq[item] = doc_freq.get(item, 0) + 1
    return SimilarityGraph(tuple(e.metamodel_id for e in corpus), weights, doc_freq)


def tfidf_vector(g: SimilarityGraph, metamodel_id: str) -> FeatureVector:
    """weight(f) = edge_weight(m, f) * log10(|M| / doc_freq(f))."""
    if metamodel_id not in g.weights:
        raise UnknownMetamodel(metamodel_id)
    size = g.size
    return {
        item: count * math.log10(size / g.doc_freq[item])
        for item, count in g.weights[metamodel_id].items()
    }


def cosine(phi: FeatureVector, omega: FeatureVector) -> float:
    """Cosine over the key union, missing key = 0; 0 if either norm is 0."""
    dot = sum(w * omega.get(item, 0.0) for item, w in phi.items())
    norm_phi = math.sqrt(sum(w * w for w in phi.values()))
    norm_omega = math.sqrt(sum(w * w for w in omega.values()))
    if norm_phi == 0.0 or norm_omega == 0.0:
        return 0.0
    return dot / (norm_phi * norm_omega)


def jaccard(a: set[str], b: set[str]) -> float:
    """|a n b| / |a u b|; 0 when both sets are empty."""
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def dump_graph(g: SimilarityGraph) -> str:
    """Tab-separated metamodelId, item, weight lines for debugging."""
    lines = []
    for mid in g.metamodel_ids:
        for item in sorted(g.weights[mid]):
            lines.append(f"{mid}\t{item}\t{g.weights[mid][item]}")
    return "\n".join(lines)
