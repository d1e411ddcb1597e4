import math
import random

import pytest

from geotime_rerank.errors import EvaluationError
from geotime_rerank.eval import (
    Judgments,
    Metric,
    evaluate_run,
    format_reports,
    hit_at_k,
    hit_rate_at_k,
    load_judgments,
    metric_key,
    mrr_at_k,
    ndcg_at_k,
    recall_at_k,
    reciprocal_rank_at_k,
    synth_corpus,
)
from geotime_rerank.event_model import serialize_corpus
from geotime_rerank.gtr import haversine_km, temporal_distance


def ndcg_oracle(ranked, relevant, k):
    dcg = sum(1.0 / math.log2(i + 2) for i, e in enumerate(ranked[:k]) if e in relevant)
    idcg = sum(1.0 / math.log2(i + 2) for i in range(min(k, len(relevant))))
    return dcg / idcg


def rr_oracle(ranked, relevant, k):
    for i, e in enumerate(ranked[:k]):
        if e in relevant:
            return 1.0 / (i + 1)
    return 0.0


def test_metrics_match_oracles_on_random_rankings():
    rng = random.Random(11)
    pool = [f"e{i}" for i in range(30)]
    for _ in range(1000):
        ranked = rng.sample(pool, rng.randint(0, 30))
        relevant = set(rng.sample(pool, rng.randint(1, 8)))
        k = rng.randint(1, 35)
        top = set(ranked[:k])
        expected_recall = len(top & relevant) / len(relevant)
        assert recall_at_k(ranked, relevant, k) == pytest.approx(expected_recall)
        assert hit_at_k(ranked, relevant, k) == (1.0 if top & relevant else 0.0)
        assert reciprocal_rank_at_k(ranked, relevant, k) == pytest.approx(
            rr_oracle(ranked, relevant, k)
        )
        ndcg = ndcg_at_k(ranked, relevant, k)
        assert ndcg == pytest.approx(ndcg_oracle(ranked, relevant, k))
        assert 0.0 <= ndcg <= 1.0 + 1e-12


def test_metric_examples():
    ranked = ["a", "x", "b", "y"]
    assert recall_at_k(ranked, {"a", "b"}, 3) == 1.0
    assert recall_at_k(ranked, {"a", "b"}, 1) == 0.5
    assert reciprocal_rank_at_k(ranked, {"b"}, 3) == pytest.approx(1 / 3)
    assert reciprocal_rank_at_k(ranked, {"b"}, 2) == 0.0
    assert ndcg_at_k(["a", "b"], {"a", "b"}, 10) == pytest.approx(1.0)
    assert ndcg_at_k([], {"a"}, 10) == 0.0


def test_metrics_reject_empty_relevant_set():
    with pytest.raises(ValueError):
        recall_at_k(["a"], set(), 1)
    with pytest.raises(ValueError):
        ndcg_at_k(["a"], set(), 1)


def test_aggregate_metrics_skip_queries_without_relevant_events():
    runs = {"q1": ["a", "b"], "q2": ["c"], "q3": ["d"]}
    judgments = {"q1": {"b"}, "q2": {"z"}, "q3": set()}
    assert hit_rate_at_k(runs, judgments, 2) == pytest.approx(0.5)
    assert mrr_at_k(runs, judgments, 2) == pytest.approx(0.25)
    with pytest.raises(EvaluationError):
        mrr_at_k(runs, {"q3": set()}, 2)


def test_evaluate_run_reports_percentages():
    runs = {"q1": ["a", "b", "c"], "q2": ["c", "d"]}
    judgments = Judgments({"q1": {"a"}, "q2": {"d"}, "q3": set()})
    report = evaluate_run(runs, judgments, cutoffs=(1, 3), name="demo")
    assert report.n_evaluated == 2
    assert report.n_skipped == 1
    assert report.value(Metric.hit_rate, 1) == pytest.approx(50.0)
    assert report.value(Metric.recall, 3) == pytest.approx(100.0)
    assert report.value(Metric.mrr, 3) == pytest.approx(75.0)
    assert report.per_query["q2"][metric_key(Metric.mrr, 3)] == pytest.approx(50.0)
    assert set(report.to_dict(include_per_query=False)) == {
        "name",
        "cutoffs",
        "metrics",
        "n_evaluated",
        "n_skipped",
        "manifest",
    }


def test_evaluate_run_means_match_oracles_on_random_runs():
    rng = random.Random(17)
    pool = [f"e{i}" for i in range(30)]
    for _ in range(1000):
        n_queries = rng.randint(1, 6)
        judgments = {f"q{i}": set(rng.sample(pool, rng.randint(0, 6))) for i in range(n_queries)}
        judgments["q0"].add(rng.choice(pool))
        runs = {
            query_id: rng.sample(pool, rng.randint(0, 20))
            for query_id in judgments
            if rng.random() < 0.9
        }
        k = rng.randint(1, 25)
        report = evaluate_run(runs, judgments, cutoffs=(k,))

        evaluable = sorted(q for q, relevant in judgments.items() if relevant)
        ranked = {q: runs.get(q, [])[:k] for q in evaluable}
        recall = [len(set(ranked[q]) & judgments[q]) / len(judgments[q]) for q in evaluable]
        hits = [1.0 if set(ranked[q]) & judgments[q] else 0.0 for q in evaluable]
        ndcg = [ndcg_oracle(runs.get(q, []), judgments[q], k) for q in evaluable]
        rr = [rr_oracle(runs.get(q, []), judgments[q], k) for q in evaluable]

        assert report.n_evaluated == len(evaluable)
        assert report.n_skipped == n_queries - len(evaluable)
        for metric, values in [
            (Metric.recall, recall),
            (Metric.hit_rate, hits),
            (Metric.ndcg, ndcg),
            (Metric.mrr, rr),
        ]:
            expected = 100.0 * sum(values) / len(values)
            assert report.value(metric, k) == pytest.approx(expected, abs=1e-9)


def test_evaluate_run_treats_missing_run_as_empty():
    report = evaluate_run({}, Judgments({"q1": {"a"}}), cutoffs=(10,))
    assert report.value(Metric.ndcg, 10) == 0.0


def test_evaluate_run_without_evaluable_query():
    with pytest.raises(EvaluationError):
        evaluate_run({}, Judgments({"q1": set()}), cutoffs=(1,))


def test_format_reports_table():
    report = evaluate_run({"q1": ["a"]}, Judgments({"q1": {"a"}}), cutoffs=(1,), name="gtr")
    table = format_reports([report], (1,))
    header, separator, row = table.splitlines()
    assert header.split() == ["Run", "Recall@1", "HitRate@1", "nDCG@1", "MRR@1"]
    assert row.split() == ["gtr", "100.0", "100.0", "100.0", "100.0"]


def test_judgments_drop_self_links_and_symmetrize():
    judgments = Judgments({"a": {"a", "b"}, "c": {"a"}}, symmetric=True)
    assert judgments["a"] == frozenset({"b", "c"})
    assert judgments["b"] == frozenset({"a"})
    assert judgments["c"] == frozenset({"a"})
    directed = Judgments({"a": {"a", "b"}})
    assert directed["a"] == frozenset({"b"})
    assert "b" not in directed


def test_judgments_from_corpus_drop_dangling_links(whale_corpus):
    judgments = Judgments.from_corpus(whale_corpus)
    assert judgments["q-kodiak"] == frozenset({"w01", "w03", "w05"})
    assert judgments.evaluable_ids == ["q-kodiak"]
    assert judgments.manifest()["evaluable_queries"] == 1


def test_load_judgments(write_jsonl, whale_corpus):
    path = write_jsonl(
        "judgments.jsonl",
        [
            {"query_id": "w01", "relevant_ids": ["w02", "ghost"]},
            {"query_id": "nobody", "relevant_ids": ["w01"]},
        ],
    )
    judgments = load_judgments(path, corpus=whale_corpus)
    assert dict(judgments) == {"w01": frozenset({"w02"})}
    with pytest.raises(ValueError):
        load_judgments(write_jsonl("bad.jsonl", [{"relevant_ids": []}]))
    with pytest.raises(FileNotFoundError):
        load_judgments(path + ".missing")


def test_synth_corpus_is_deterministic():
    first, _ = synth_corpus(seed=5, n_events=60, n_clusters=4)
    second, _ = synth_corpus(seed=5, n_events=60, n_clusters=4)
    other, _ = synth_corpus(seed=6, n_events=60, n_clusters=4)
    assert serialize_corpus(first) == serialize_corpus(second)
    assert serialize_corpus(first) != serialize_corpus(other)


def test_synth_corpus_size_and_validation():
    corpus, judgments = synth_corpus(seed=1, n_events=200, n_clusters=10)
    assert corpus.n_z == 200
    assert len(judgments.evaluable_ids) > 0
    with pytest.raises(ValueError):
        synth_corpus(seed=1, n_events=3, n_clusters=5)


def test_synth_clusters_share_place_season_and_category(synth):
    corpus, judgments = synth
    for query_id in judgments.evaluable_ids:
        query = corpus.get(query_id)
        for related_id in judgments[query_id]:
            member = corpus.get(related_id)
            assert member.categories == query.categories
            assert haversine_km(query.point, member.point) < 601.0
            assert abs(query.latitude - member.latitude) < 3.0 + 1e-3
            assert temporal_distance(query.date, member.date) <= 30
            assert query_id in judgments[related_id]


def test_synth_distractors_have_no_relevant_events(synth):
    corpus, judgments = synth
    distractors = [event for event in corpus if not event.categories]
    assert distractors
    assert all(not judgments[event.id] for event in distractors)


def test_synth_near_misses_share_tag_place_and_season(synth):
    corpus, judgments = synth
    near_misses = [event for event in corpus if event.categories and not judgments[event.id]]
    assert near_misses
    for event in near_misses:
        members = [
            corpus.get(query_id)
            for query_id in judgments.evaluable_ids
            if corpus.get(query_id).categories == event.categories
            and corpus.get(query_id).location_name == event.location_name
        ]
        assert members
        assert any(haversine_km(event.point, member.point) < 351.0 for member in members)
        assert any(temporal_distance(event.date, member.date) <= 20 for member in members)


def test_synth_corpus_one_event_per_cluster():
    corpus, judgments = synth_corpus(seed=1, n_events=200, n_clusters=200)
    assert corpus.n_z == 200
    assert all(event.categories for event in corpus)
    assert not judgments.evaluable_ids
