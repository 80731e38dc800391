"""Context-aware collaborative filtering over encoded metamodels.

Scoring pipeline per query:
  1. top-k similar corpus metamodels by TF-IDF cosine (sim1 > 0 only)
  2. top similar contexts among those neighbors by Jaccard (sim2 > 0)
  3. combined rating of a candidate item: sim1-weighted average of the
     neighbors' binary ratings
  4. predicted rating: active context mean plus sim2-weighted,
     mean-centered combined ratings
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoder import EncodedMetamodel, EncodingScheme, encode
from .errors import UnknownContext, UnknownMetamodel
from .model import Metamodel
from .simgraph import SimilarityGraph, build_graph, cosine, jaccard, tfidf_vector


@dataclass(frozen=True)
class RatingView:
    """Binary context x item presence matrix of one metamodel."""

    metamodel_id: str
    contexts: tuple[str, ...]
    items: tuple[str, ...]
    present: frozenset[tuple[str, str]]  # (context, item) cells equal to 1

    def rating(self, context: str, item: str) -> int:
        return 1 if (context, item) in self.present else 0


def rating_view(enc: EncodedMetamodel) -> RatingView:
    contexts = tuple(dict.fromkeys(p.context for p in enc.pairs))
    items = tuple(dict.fromkeys(p.item for p in enc.pairs))
    return RatingView(
        enc.metamodel_id,
        contexts,
        items,
        frozenset((p.context, p.item) for p in enc.pairs),
    )


@dataclass(frozen=True)
class RecommendationQuery:
    active_metamodel: Metamodel
    scheme: EncodingScheme
    active_context: str
    k: int = 5
    k_contexts: int = 5
    n: int = 10


@dataclass(frozen=True)
class RankedList:
    entries: tuple[tuple[str, float], ...]
    # true when no corpus metamodel had positive similarity
    empty_corpus: bool = False

    def items(self) -> list[str]:
        return [item for item, _ in self.entries]


@dataclass(frozen=True)
class ContextRef:
    """A context inside one corpus metamodel, with its item set."""

    metamodel_id: str
    name: str
    items: frozenset[str]


def top_similar_metamodels(
    g: SimilarityGraph, active_id: str, k: int
) -> list[tuple[str, float]]:
    """Up to k corpus metamodels with sim1 > 0, most similar first,
    ties broken by id. The active metamodel itself is excluded."""
    if active_id not in g.weights:
        raise UnknownMetamodel(active_id)
    active_vec = tfidf_vector(g, active_id)
    scored = []
    for mid in g.metamodel_ids:
        if mid == active_id:
            continue
        sim1 = cosine(active_vec, tfidf_vector(g, mid))
        if sim1 > 0.0:
            scored.append((mid, sim1))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


def top_similar_contexts(
    active_items: set[str], candidates: list[ContextRef], k_contexts: int
) -> list[tuple[ContextRef, float]]:
    """Up to k_contexts candidates with sim2 > 0, most similar first,
    ties broken by (metamodel id, context name)."""
    scored = []
    for ref in candidates:
        sim2 = jaccard(active_items, set(ref.items))
        if sim2 > 0.0:
            scored.append((ref, sim2))
    scored.sort(key=lambda pair: (-pair[1], pair[0].metamodel_id, pair[0].name))
    return scored[:k_contexts]


def combined_rating(
    context_name: str, item: str, neighbors: list[tuple[RatingView, float]]
) -> float:
    """sim1-weighted average of the neighbors' binary ratings.

    A neighbor lacking the context entirely contributes rating 0.
    """
    num = sum(view.rating(context_name, item) * sim1 for view, sim1 in neighbors)
    den = sum(sim1 for _, sim1 in neighbors)
    return num / den


def predict_rating(
    active_items: set[str],
    item: str,
    top_contexts: list[tuple[ContextRef, float]],
    views: list[tuple[RatingView, float]],
    universe_size: int,
) -> float:
    """Mean-centered, sim2-weighted predicted rating of one item.

    Context means use the aligned item universe of the current query so
    the active context and the neighbor contexts share a denominator.
    Falls back to the active context's mean when there are no similar
    contexts.
    """
    mean_active = len(active_items) / universe_size
    sim2_total = sum(sim2 for _, sim2 in top_contexts)
    if not top_contexts or sim2_total == 0.0:
        return mean_active
    acc = 0.0
    for ref, sim2 in top_contexts:
        combined = combined_rating(ref.name, item, views)
        mean_d = len(ref.items) / universe_size
        acc += (combined - mean_d) * sim2
    return mean_active + acc / sim2_total


@dataclass
class Recommender:
    """Immutable corpus state answering recommendation queries.

    Safe for concurrent queries; nothing is mutated after construction.
    """

    scheme: EncodingScheme
    corpus: tuple[EncodedMetamodel, ...]
    _by_id: dict[str, EncodedMetamodel] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._by_id = {enc.metamodel_id: enc for enc in self.corpus}

    def recommend_encoded(
        self,
        active: EncodedMetamodel,
        active_context: str,
        k: int,
        k_contexts: int,
        n: int,
    ) -> RankedList:
        """Core scoring path over an already-encoded active metamodel."""
        if active_context not in active.known_contexts:
            raise UnknownContext(
                f"{active_context!r} under scheme {self.scheme.value}"
            )
        corpus = [e for e in self.corpus if e.metamodel_id != active.metamodel_id]
        graph = build_graph(corpus + [active])
        neighbors = top_similar_metamodels(graph, active.metamodel_id, k)
        if not neighbors:
            return RankedList((), empty_corpus=True)

        active_items = set(active.items_of(active_context))
        candidates: list[ContextRef] = []
        for mid, _ in neighbors:
            enc = self._by_id[mid]
            for ctx, items in enc.context_item_lists().items():
                if items:
                    candidates.append(ContextRef(mid, ctx, frozenset(items)))
        top_contexts = top_similar_contexts(active_items, candidates, k_contexts)
        if not top_contexts:
            return RankedList(())

        views = [(rating_view(self._by_id[mid]), sim1) for mid, sim1 in neighbors]
        universe = set(active_items)
        for ref, _ in top_contexts:
            universe.update(ref.items)

        candidate_items = sorted(
            {item for ref, _ in top_contexts for item in ref.items} - active_items
        )
        entries = []
        for item in candidate_items:
            score = predict_rating(
                active_items, item, top_contexts, views, len(universe)
            )
            entries.append((item, score))
        entries.sort(key=lambda e: (-e[1], e[0]))
        return RankedList(tuple(entries[:n]))

    def recommend(self, query: RecommendationQuery) -> RankedList:
        """Encode the active metamodel and answer the query."""
        active = encode(query.active_metamodel, query.scheme)
        if query.scheme is not self.scheme:
            raise UnknownContext(
                f"recommender indexes scheme {self.scheme.value}, "
                f"query uses {query.scheme.value}"
            )
        return self.recommend_encoded(
            active, query.active_context, query.k, query.k_contexts, query.n
        )
