from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memorec.encoder import EncodingScheme, encode
from memorec.errors import CorpusTooSmall, EmptyCaseSet
from memorec.evaluation import (
    EvalConfig,
    make_query_case,
    precision_recall_f1,
    reduce_encoding,
    report_csv,
    report_json,
    run_evaluation,
    split_folds,
    success_rate_at_n,
)
from memorec.synthetic import clustered_corpus, index_from_models


def fake_clock():
    counter = itertools.count()
    return lambda: next(counter) * 0.001


# --- fold splitting ---------------------------------------------------------


def test_split_folds_partition():
    ids = [f"m{i}" for i in range(10)]
    folds = split_folds(ids, 10, seed=1)
    testing = [t for _, test in folds for t in test]
    assert sorted(testing) == sorted(ids)
    assert all(len(test) == 1 for _, test in folds)


def test_split_folds_pigeonhole():
    ids = [f"m{i}" for i in range(11)]
    folds = split_folds(ids, 10, seed=1)
    sizes = sorted(len(test) for _, test in folds)
    assert sizes == [1] * 9 + [2]


def test_split_folds_deterministic():
    ids = [f"m{i}" for i in range(25)]
    assert split_folds(ids, 10, seed=9) == split_folds(ids, 10, seed=9)


def test_split_folds_no_leakage():
    ids = [f"m{i}" for i in range(23)]
    for training, testing in split_folds(ids, 10, seed=3):
        assert not set(training) & set(testing)
        assert sorted(training + testing) == sorted(ids)


def test_split_folds_too_small():
    with pytest.raises(CorpusTooSmall):
        split_folds(["a", "b"], 10, seed=0)


# --- query construction -----------------------------------------------------


def test_make_query_case_first_item_rule(web_model):
    case = make_query_case(web_model, EncodingScheme.IEs, seed=0)
    assert case is not None
    enc = encode(web_model, EncodingScheme.IEs)
    items = enc.items_of(case.active_context)
    assert list(case.query_items) == [items[0]]
    assert case.ground_truth == frozenset(items[1:])
    assert case.ground_truth
    assert not set(case.query_items) & case.ground_truth


def test_make_query_case_skip(web_model):
    from memorec.jsonmodel import parse_json_model

    m = parse_json_model(
        b'{"packages": [{"name": "P", "classes": [{"name": "A", '
        b'"features": [{"name": "x", "kind": "attribute"}]}]}]}',
        "one-item",
    )
    assert make_query_case(m, EncodingScheme.SEs, seed=0) is None


def test_make_query_case_deterministic(web_model):
    a = make_query_case(web_model, EncodingScheme.SEs, seed=5)
    b = make_query_case(web_model, EncodingScheme.SEs, seed=5)
    assert a == b


def test_reduce_encoding_strips_ground_truth(web_model):
    scheme = EncodingScheme.SEc
    case = make_query_case(web_model, scheme, seed=0)
    enc = encode(web_model, scheme)
    reduced = reduce_encoding(enc, case)
    assert set(reduced.items_of(case.active_context)) == set(case.query_items)
    # other contexts untouched
    for ctx in enc.known_contexts:
        if ctx != case.active_context:
            assert reduced.items_of(ctx) == enc.items_of(ctx)


# --- metrics ----------------------------------------------------------------


def test_success_rate_counts():
    assert success_rate_at_n([1, 0, 2]) == pytest.approx(2 / 3)
    assert success_rate_at_n([0, 0]) == 0.0
    assert success_rate_at_n([1, 3]) == 1.0


def test_success_rate_empty():
    with pytest.raises(EmptyCaseSet):
        success_rate_at_n([])


def test_precision_recall_f1_worked():
    p, r, f1 = precision_recall_f1(1, 2, 4)
    assert (p, r) == (0.5, 0.25)
    assert f1 == pytest.approx(1 / 3)


def test_precision_recall_f1_zero():
    assert precision_recall_f1(0, 5, 3) == (0.0, 0.0, 0.0)


@given(
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=0, max_value=20),
)
def test_prf_properties(n, gt, tp_raw):
    tp = min(tp_raw, n, gt)
    p, r, f1 = precision_recall_f1(tp, n, gt)
    assert p * n == pytest.approx(tp)
    assert 0.0 <= r <= 1.0
    assert (f1 == 0.0) == (tp == 0)
    if p == r:
        assert f1 == pytest.approx(p)


# --- full runs --------------------------------------------------------------


@pytest.fixture(scope="module")
def small_index():
    return index_from_models(
        clustered_corpus(n_clusters=3, per_cluster=7, seed=11),
        (EncodingScheme.SEs,),
    )


def test_run_evaluation_report_shape(small_index):
    config = EvalConfig(EncodingScheme.SEs, k=3, k_contexts=3, folds=3, cutoffs=(1, 10, 20), seed=2)
    report = run_evaluation(small_index, config, clock=fake_clock())
    assert {r.n for r in report.rows} == {1, 10, 20}
    assert {r.fold for r in report.rows} == {0, 1, 2}
    for r in report.rows:
        for value in (r.success_rate, r.precision, r.recall, r.f1):
            assert 0.0 <= value <= 1.0


def test_run_evaluation_sr_monotone_in_n(small_index):
    config = EvalConfig(EncodingScheme.SEs, k=3, k_contexts=3, folds=3, cutoffs=(1, 10, 20), seed=2)
    report = run_evaluation(small_index, config, clock=fake_clock())
    for fold in {r.fold for r in report.rows}:
        srs = [r.success_rate for r in sorted(
            (r for r in report.rows if r.fold == fold), key=lambda r: r.n
        )]
        assert srs == sorted(srs)


def test_run_evaluation_deterministic(small_index):
    config = EvalConfig(EncodingScheme.SEs, k=3, k_contexts=3, folds=3, cutoffs=(1, 5), seed=4)
    a = run_evaluation(small_index, config, clock=fake_clock())
    b = run_evaluation(small_index, config, clock=fake_clock())
    assert report_csv(a) == report_csv(b)
    assert report_json(a) == report_json(b)


def test_run_evaluation_forced_success():
    # 4 families with disjoint vocabularies, 3 context-identical copies
    # each; testing folds of size 2 guarantee every testing metamodel
    # keeps an exact-duplicate neighbor in training, and disjointness
    # forces every candidate item into the ground truth
    import json as _json

    from memorec.jsonmodel import parse_json_model

    models = []
    for fam in range(4):
        classes = [
            {
                "name": f"F{fam}Cls{c}",
                "features": [
                    {"name": f"f{fam}c{c}x{j}", "kind": "attribute"} for j in range(3)
                ],
            }
            for c in range(3)
        ]
        for copy in range(3):
            doc = {
                "source": f"fam{fam}copy{copy}",
                "packages": [{"name": f"P{fam}", "classes": classes}],
            }
            models.append(
                parse_json_model(
                    _json.dumps(doc, sort_keys=True).encode(), doc["source"]
                )
            )
    index = index_from_models(models, (EncodingScheme.SEs,))
    config = EvalConfig(
        EncodingScheme.SEs, k=4, k_contexts=4, folds=6, cutoffs=(1, 10), seed=0
    )
    report = run_evaluation(index, config, clock=fake_clock())
    for r in report.rows:
        if r.n == 1:
            assert r.success_rate == 1.0


def test_evalconfig_validation():
    with pytest.raises(ValueError):
        EvalConfig(EncodingScheme.SEs, folds=1)
    with pytest.raises(ValueError):
        EvalConfig(EncodingScheme.SEs, cutoffs=())
    with pytest.raises(ValueError):
        EvalConfig(EncodingScheme.SEs, cutoffs=(5, 5))
    with pytest.raises(ValueError):
        EvalConfig(EncodingScheme.SEs, cutoffs=(10, 5))


def test_report_csv_layout(small_index):
    config = EvalConfig(EncodingScheme.SEs, k=2, k_contexts=2, folds=3, cutoffs=(1, 5, 10), seed=1)
    report = run_evaluation(small_index, config, clock=fake_clock())
    lines = report_csv(report).splitlines()
    assert lines[0].startswith("# host:")
    assert lines[1] == "fold,scheme,k,kContexts,N,SR,precision,recall,f1,meanQueryMs"
    data = [l for l in lines[2:] if not l.startswith("#")]
    # 3 folds x 3 cutoffs + 3 aggregate rows
    assert len(data) == 12
    assert sum(1 for l in data if l.startswith("all,")) == 3


def test_write_reports_files(tmp_path, small_index):
    from memorec.evaluation import write_reports

    config = EvalConfig(EncodingScheme.SEs, k=2, k_contexts=2, folds=3, cutoffs=(1, 5), seed=1)
    report = run_evaluation(small_index, config, clock=fake_clock())
    written = write_reports(report, tmp_path / "run", figures=True)
    names = sorted(p.name for p in written)
    assert names == ["run.csv", "run.json", "run_metrics.png", "run_timing.png"]
    for p in written:
        assert p.exists() and p.stat().st_size > 0
