from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memorec.encoder import EncodedMetamodel, EncodingScheme, ItemPair
from memorec.errors import DuplicateMetamodelId, MixedSchemes, UnknownMetamodel
from memorec.simgraph import build_graph, cosine, jaccard, tfidf_vector


def enc(mid, pairs, scheme=EncodingScheme.SEs):
    items = tuple(ItemPair(c, i) for c, i in pairs)
    contexts = tuple(dict.fromkeys(c for c, _ in pairs))
    return EncodedMetamodel(mid, scheme, items, contexts)


def test_edge_weight_counts_multiplicity():
    g = build_graph([enc("W", [("A", "name"), ("B", "name"), ("A", "x")])])
    assert g.edge_weight("W", "name") == 2
    assert g.edge_weight("W", "x") == 1
    assert g.edge_weight("W", "missing") == 0


def test_doc_freq_counts_metamodels():
    g = build_graph(
        [enc("a", [("C", "title")]), enc("b", [("D", "title"), ("D", "title")])]
    )
    assert g.doc_freq["title"] == 2


def test_empty_corpus():
    g = build_graph([])
    assert g.size == 0
    assert g.item_names == []


def test_mixed_schemes_rejected():
    with pytest.raises(MixedSchemes):
        build_graph(
            [enc("a", [("C", "x")]), enc("b", [("C", "x")], EncodingScheme.IEs)]
        )


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateMetamodelId):
        build_graph([enc("a", [("C", "x")]), enc("a", [("C", "y")])])


def test_tfidf_ubiquitous_item_is_zero():
    g = build_graph([enc("a", [("C", "x")]), enc("b", [("D", "x")])])
    assert tfidf_vector(g, "a")["x"] == pytest.approx(0.0)


def test_tfidf_hand_computed():
    # |M| = 10, docFreq(x) = 1, edge weight 2 -> 2 * log10(10/1) = 2.0
    corpus = [enc("m0", [("C", "x"), ("D", "x")])]
    corpus += [enc(f"m{i}", [("C", f"other{i}")]) for i in range(1, 10)]
    g = build_graph(corpus)
    assert tfidf_vector(g, "m0")["x"] == pytest.approx(2.0, abs=1e-12)


def test_tfidf_empty_metamodel():
    g = build_graph([enc("a", []), enc("b", [("C", "x")])])
    assert tfidf_vector(g, "a") == {}


def test_tfidf_unknown_metamodel():
    g = build_graph([])
    with pytest.raises(UnknownMetamodel):
        tfidf_vector(g, "nope")


def test_tfidf_matches_brute_force_recount():
    corpus = [
        enc("m0", [("C", "x"), ("C", "y"), ("D", "x")]),
        enc("m1", [("C", "y")]),
        enc("m2", [("E", "z"), ("E", "x")]),
    ]
    g = build_graph(corpus)
    for target in corpus:
        counts: dict[str, int] = {}
        for p in target.pairs:
            counts[p.item] = counts.get(p.item, 0) + 1
        expected = {}
        for item, count in counts.items():
            df = sum(1 for e in corpus if any(p.item == item for p in e.pairs))
            expected[item] = count * math.log10(len(corpus) / df)
        got = tfidf_vector(g, target.metamodel_id)
        assert got.keys() == expected.keys()
        for item in expected:
            assert got[item] == pytest.approx(expected[item], abs=1e-12)


def test_cosine_self_is_one():
    v = {"a": 0.3, "b": -1.2}
    assert cosine(v, v) == pytest.approx(1.0, abs=1e-9)


def test_cosine_zero_norm():
    assert cosine({}, {"a": 1.0}) == 0.0
    assert cosine({"a": 0.0}, {"a": 1.0}) == 0.0


# weights are zero or of moderate magnitude; values near the subnormal
# range would underflow when squared and break the tolerance checks
sparse_vectors = st.dictionaries(
    st.sampled_from(["a", "b", "c", "d", "e"]),
    st.one_of(
        st.just(0.0),
        st.floats(min_value=1e-3, max_value=5),
        st.floats(min_value=-5, max_value=-1e-3),
    ),
    max_size=5,
)


@given(sparse_vectors, sparse_vectors)
def test_cosine_symmetric(u, v):
    assert cosine(u, v) == pytest.approx(cosine(v, u), abs=1e-12)


@given(
    sparse_vectors,
    sparse_vectors,
    st.floats(min_value=0.01, max_value=100, allow_nan=False),
)
def test_cosine_scale_invariant(u, v, lam):
    scaled = {key: lam * val for key, val in u.items()}
    assert cosine(scaled, v) == pytest.approx(cosine(u, v), abs=1e-9)


@given(sparse_vectors, sparse_vectors)
def test_cosine_in_range(u, v):
    assert -1.0 - 1e-9 <= cosine(u, v) <= 1.0 + 1e-9


def test_jaccard_worked_example():
    static = {"title", "meta", "content", "picture"}
    dynamic = {"title", "meta", "list", "entity"}
    assert jaccard(static, dynamic) == pytest.approx(2 / 6)


def test_jaccard_extremes():
    assert jaccard({"a"}, {"a"}) == 1.0
    assert jaccard({"a"}, {"b"}) == 0.0
    assert jaccard(set(), set()) == 0.0


item_sets = st.sets(st.sampled_from(["a", "b", "c", "d", "e"]), max_size=5)


@given(item_sets, item_sets)
def test_jaccard_properties(a, b):
    j = jaccard(a, b)
    assert 0.0 <= j <= 1.0
    assert j == jaccard(b, a)
    if a and b:
        assert (j == 1.0) == (a == b)
