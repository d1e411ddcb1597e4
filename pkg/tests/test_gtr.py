import datetime
import math
import random

import numpy as np
import pytest

from geotime_rerank.eval import synth_corpus
from geotime_rerank.event_model import Corpus, GeoPoint, SegmentSpec
from geotime_rerank.gtr import (
    ALL_FEATURES,
    Feature,
    FeatureRanking,
    GtrParams,
    GtrReranker,
    LatitudeMode,
    category_ranking,
    destination_point,
    distance_ranking,
    gtr_rerank,
    haversine_km,
    latitude_diff,
    latitude_ranking,
    rank_ascending,
    rank_descending,
    rrf_fuse,
    semantic_ranking,
    temporal_distance,
    temporal_ranking,
)
from geotime_rerank.gtr.feature_rankings import (
    distance_ranking_from_km,
    temporal_ranking_from_days,
)
from geotime_rerank.providers import MockProvider, ProviderConfig
from geotime_rerank.retrieval import DenseIndex, dense_retrieve

KODIAK = GeoPoint(57.79, -152.407)
SITKA = GeoPoint(57.053, -135.33)


def chord_distance_km(p: GeoPoint, q: GeoPoint, radius: float = 6371.0) -> float:
    def unit(point):
        lat, lon = math.radians(point.latitude), math.radians(point.longitude)
        return np.array(
            [math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat)]
        )

    chord = float(np.linalg.norm(unit(p) - unit(q)))
    return 2.0 * radius * math.asin(chord / 2.0)


def brute_force_days(d1: datetime.date, d2: datetime.date) -> int:
    def doy(d):
        ordinal = d.timetuple().tm_yday
        leap = d.year % 4 == 0 and (d.year % 100 != 0 or d.year % 400 == 0)
        return ordinal - 1 if leap and d.month > 2 else ordinal

    return min(abs(doy(d1) - doy(d2) + 365 * shift) for shift in (-1, 0, 1))


def test_rank_helpers_break_ties_by_id():
    assert rank_descending({"b": 1.0, "a": 1.0, "c": 2.0}) == {"c": 1, "a": 2, "b": 3}
    assert rank_ascending({"b": 1.0, "a": 1.0, "c": 0.0}) == {"c": 1, "a": 2, "b": 3}


def test_haversine_kodiak_to_sitka_matches_chord_oracle():
    expected = chord_distance_km(KODIAK, SITKA)
    assert haversine_km(KODIAK, SITKA) == pytest.approx(expected, rel=1e-3)
    assert 950.0 < expected < 1100.0


def test_haversine_basic_properties():
    assert haversine_km(KODIAK, KODIAK) == 0.0
    assert haversine_km(KODIAK, SITKA) == pytest.approx(haversine_km(SITKA, KODIAK))
    antipode = haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 180.0))
    assert antipode == pytest.approx(math.pi * 6371.0)
    assert haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0), radius_km=1.0) == pytest.approx(
        math.radians(1.0)
    )


def test_haversine_half_circumference():
    assert haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 180.0)) == pytest.approx(
        20015.087, abs=1e-3
    )


def test_haversine_random_pairs_and_triangle_inequality():
    rng = random.Random(5)

    def point():
        return GeoPoint(rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0))

    for _ in range(100):
        p, q = point(), point()
        expected = chord_distance_km(p, q)
        assert haversine_km(p, q) == pytest.approx(expected, rel=1e-3, abs=1e-6)
    for _ in range(1000):
        a, b, c = point(), point(), point()
        assert haversine_km(a, b) == pytest.approx(haversine_km(b, a), abs=1e-6)
        assert haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-6


def test_neutral_boosters_and_weights_keep_raw_ranks():
    distances = {"a": 10.0, "b": 200.0, "c": 800.0}
    diffs = {"a": 0.1, "b": 1.0, "c": 2.0}
    raw_semantic = {"a": 2, "b": 3, "c": 1}
    distance = distance_ranking_from_km(distances, 500.0, 1.0)
    assert distance.adjusted == {k: float(v) for k, v in distance.raw.items()}
    latitude = latitude_ranking(raw_semantic, distances, diffs, 500.0, 5.0, 1.0)
    assert latitude.adjusted == {k: float(v) for k, v in raw_semantic.items()}
    semantic = semantic_ranking({"a": 0.3, "b": 0.2, "c": 0.9}, w_s=1.0)
    assert semantic.adjusted == {k: float(v) for k, v in semantic.raw.items()}


def test_destination_point_lands_on_the_circle():
    for bearing in range(0, 360, 45):
        point = destination_point(KODIAK, float(bearing), 500.0)
        assert haversine_km(KODIAK, point) == pytest.approx(500.0, abs=1e-6)


@pytest.mark.parametrize(
    "d1, d2, expected",
    [
        (datetime.date(2023, 1, 1), datetime.date(2023, 12, 31), 1),
        (datetime.date(2019, 5, 23), datetime.date(2023, 5, 23), 0),
        (datetime.date(2023, 1, 1), datetime.date(2023, 7, 2), 182),
        (datetime.date(2024, 2, 29), datetime.date(2023, 3, 1), 0),
    ],
)
def test_temporal_distance_examples(d1, d2, expected):
    assert temporal_distance(d1, d2) == expected


def test_temporal_distance_matches_brute_force():
    rng = random.Random(3)
    start = datetime.date(2000, 1, 1)
    for _ in range(10_000):
        d1 = start + datetime.timedelta(days=rng.randrange(365 * 30))
        d2 = start + datetime.timedelta(days=rng.randrange(365 * 30))
        value = temporal_distance(d1, d2)
        assert value == brute_force_days(d1, d2)
        assert 0 <= value <= 182


def test_rrf_hand_check():
    semantic = semantic_ranking({"a": 0.9, "b": 0.8, "c": 0.7, "d": 0.6, "e": 0.5}, w_s=1.0)
    distance = distance_ranking_from_km(
        {"a": 800.0, "b": 100.0, "c": 50.0, "d": 1000.0, "e": 600.0}, tau_d=500.0, beta_d=2.0
    )
    temporal = temporal_ranking_from_days({"a": 10, "b": 100, "c": 5, "d": 0, "e": 50})
    fused = rrf_fuse([semantic, distance, temporal], rrf_k=60.0)

    expected = {
        "a": 1 / 61 + 1 / 64 + 1 / 63,
        "b": 1 / 62 + 1 / 61 + 1 / 65,
        "c": 1 / 63 + 1 / 60.5 + 1 / 62,
        "d": 1 / 64 + 1 / 65 + 1 / 61,
        "e": 1 / 65 + 1 / 63 + 1 / 64,
    }
    for event_id, value in expected.items():
        assert fused.scores[event_id] == pytest.approx(value, abs=1e-12)
    assert fused.ranking == ("c", "b", "a", "d", "e")
    assert rrf_fuse([semantic, distance, temporal], 60.0, n_rerank=2).top_ids == ("c", "b")


def test_rrf_single_ranking_keeps_its_order():
    semantic = semantic_ranking({"x": 0.1, "y": 0.3, "z": 0.2}, w_s=0.5)
    assert rrf_fuse([semantic], 60.0).ranking == ("y", "z", "x")


def test_rrf_rejects_mismatched_domains_and_bad_k():
    a = semantic_ranking({"x": 1.0, "y": 0.5}, 1.0)
    b = semantic_ranking({"x": 1.0, "z": 0.5}, 1.0)
    with pytest.raises(ValueError):
        rrf_fuse([a, b], 60.0)
    with pytest.raises(ValueError):
        rrf_fuse([a], 0.0)


def test_feature_ranking_validates_permutation():
    with pytest.raises(ValueError):
        FeatureRanking(Feature.semantic, {"a": 1, "b": 1}, {"a": 1.0, "b": 1.0})


def test_distance_boost_is_strict():
    ranking = distance_ranking_from_km({"in": 499.9, "edge": 500.0, "far": 900.0}, 500.0, 2.0)
    assert ranking.raw == {"in": 1, "edge": 2, "far": 3}
    assert ranking.adjusted == {"in": 0.5, "edge": 2.0, "far": 3.0}


def test_latitude_boost_needs_distance_and_band():
    raw_semantic = {"near": 1, "band": 2, "band_edge": 3, "off_band": 4, "at_tau": 5}
    distances = {
        "near": 100.0,
        "band": 900.0,
        "band_edge": 900.0,
        "off_band": 900.0,
        "at_tau": 500.0,
    }
    diffs = {"near": 0.1, "band": 4.9, "band_edge": 5.0, "off_band": 8.0, "at_tau": 1.0}
    ranking = latitude_ranking(raw_semantic, distances, diffs, 500.0, 5.0, 2.0)
    assert ranking.raw == raw_semantic
    assert ranking.adjusted == {
        "near": 1.0,
        "band": 1.0,
        "band_edge": 3.0,
        "off_band": 4.0,
        "at_tau": 2.5,
    }


def test_latitude_sorted_mode_ranks_by_difference():
    raw_semantic = {"a": 1, "b": 2, "c": 3}
    diffs = {"a": 9.0, "b": 1.0, "c": 3.0}
    distances = {"a": 1000.0, "b": 1000.0, "c": 100.0}
    ranking = latitude_ranking(
        raw_semantic, distances, diffs, 500.0, 5.0, 2.0, mode=LatitudeMode.sorted
    )
    assert ranking.raw == {"b": 1, "c": 2, "a": 3}
    assert ranking.adjusted == {"b": 0.5, "c": 2.0, "a": 3.0}


def test_distance_ranking_from_events(whale_corpus):
    query = whale_corpus.get("q-kodiak")
    candidates = [whale_corpus.get(i) for i in ("w01", "w03", "w02")]
    ranking = distance_ranking(query, candidates, 500.0, 2.0)
    assert ranking.raw == {"w01": 1, "w02": 2, "w03": 3}
    assert ranking.adjusted["w01"] == 0.5
    assert ranking.adjusted["w03"] == 3.0


def test_temporal_and_latitude_signals_from_events(whale_corpus):
    query = whale_corpus.get("q-kodiak")
    candidates = [whale_corpus.get(i) for i in ("w01", "w03", "o01", "o02")]
    ranking = temporal_ranking(query, candidates)
    days = {z.id: temporal_distance(query.date, z.date) for z in candidates}
    assert ranking.raw == rank_ascending(days)
    assert ranking.adjusted == {k: float(v) for k, v in ranking.raw.items()}
    sitka = whale_corpus.get("w03")
    assert latitude_diff(query, sitka) == pytest.approx(abs(query.latitude - sitka.latitude))


def test_category_ranking_divides_by_weight(whale_corpus, mock_provider):
    query = whale_corpus.get("q-kodiak")
    candidates = [whale_corpus.get(i) for i in ("w01", "w03", "o01", "o04")]
    ranking = category_ranking(query, candidates, mock_provider, w_c=0.9)
    assert sorted(ranking.raw.values()) == [1, 2, 3, 4]
    assert ranking.adjusted == {k: v / 0.9 for k, v in ranking.raw.items()}
    assert all(abs(score) <= 1.0 + 1e-9 for score in ranking.signal.values())


def test_params_validation_and_weights():
    with pytest.raises(ValueError):
        GtrParams(w_s=0.0)
    with pytest.raises(ValueError):
        GtrParams(n_retrieve=5, n_rerank=10)
    with pytest.raises(ValueError):
        GtrParams(enabled_features=[])
    with pytest.raises(ValueError):
        GtrParams(enabled_features=["semantic", "weather"])
    with pytest.raises(ValueError):
        GtrParams(beta_d=0.0)
    with pytest.raises(ValueError):
        GtrParams(w_s=1.5)
    with pytest.raises(ValueError):
        GtrParams(w_c=1.01)
    assert GtrParams(w_s=1.0, w_c=1.0).w_c == 1.0

    params = GtrParams(enabled_features=["temporal", "semantic"])
    assert params.enabled_features == ["semantic", "temporal"]
    no_semantic = GtrParams().with_weights(0.0, 1.0)
    assert not no_semantic.is_enabled(Feature.semantic)
    assert GtrParams().with_weights(1.0, 0.0).features == (
        Feature.semantic,
        Feature.distance,
        Feature.latitude,
        Feature.temporal,
    )
    assert len(GtrParams().without_feature(Feature.latitude).features) == 4


def test_reduction_identity_on_fifty_events():
    corpus, _ = synth_corpus(seed=7, n_events=50, n_clusters=5)
    provider = MockProvider(ProviderConfig())
    spec = SegmentSpec()
    index = DenseIndex.build(corpus, spec, provider)
    params = GtrParams(enabled_features=["semantic"], w_s=1.0)
    for query in list(corpus)[:10]:
        fused = gtr_rerank(query, corpus, index, params, provider)
        expected = dense_retrieve(query, index, spec, params.n_retrieve, provider).ids
        assert list(fused.top_ids) == expected[: params.n_rerank]


def test_kodiak_query_finds_the_three_hits(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    fused = reranker.rerank("q-kodiak")
    assert len(fused.top_ids) == 10
    assert {"w01", "w03", "w05"} <= set(fused.top_ids)
    assert "q-kodiak" not in fused.ranking


def test_candidate_dict_reports_every_feature(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    fused = reranker.rerank("q-kodiak")
    doc = fused.to_dict("q-kodiak", GtrParams().to_dict())
    first = doc["candidates"][0]
    assert first["final_rank"] == 1
    assert set(first["features"]) == {f.value for f in ALL_FEATURES}
    assert set(first["features"]["distance"]) == {"raw", "adjusted", "km"}
    assert set(first["features"]["temporal"]) == {"raw", "days"}
    assert len(doc["candidates"]) == 10


def test_removing_a_feature_keeps_the_candidate_set(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    params = GtrParams()
    prepared = reranker.prepare("q-kodiak", params, ALL_FEATURES)
    full = reranker.fuse(prepared, params)
    for feature in ALL_FEATURES:
        reduced = reranker.fuse(prepared, params.without_feature(feature))
        assert set(reduced.ranking) == set(full.ranking)
        assert feature not in reduced.rankings


def test_fuse_rejects_other_stage_one_params(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    prepared = reranker.prepare("q-kodiak")
    with pytest.raises(ValueError):
        reranker.fuse(prepared, GtrParams(n_retrieve=50))


def test_prepare_without_category_cannot_fuse_category(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    prepared = reranker.prepare("q-kodiak", features=(Feature.semantic,))
    assert prepared.category_scores is None
    with pytest.raises(ValueError):
        reranker.fuse(prepared, GtrParams())


def test_single_event_corpus_gives_empty_result(whale_corpus, mock_provider):
    corpus = Corpus([whale_corpus.get("q-kodiak")])
    fused = GtrReranker(corpus, mock_provider, SegmentSpec()).rerank("q-kodiak")
    assert fused.top_ids == () and fused.ranking == ()


def test_bm25_stage_one(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    params = GtrParams(retriever="bm25")
    fused = reranker.rerank("q-kodiak", params)
    assert len(fused.top_ids) == 10
    assert "w01" in fused.top_ids


def test_prepare_many_is_independent_of_worker_count(whale_corpus, mock_provider):
    reranker = GtrReranker(whale_corpus, mock_provider, SegmentSpec())
    ids = ["q-kodiak", "w01", "w05", "o01"]
    serial = reranker.prepare_many(ids, jobs=1)
    parallel = reranker.prepare_many(ids, jobs=3)
    assert list(serial) == list(parallel) == ids
    for query_id in ids:
        assert serial[query_id] == parallel[query_id]
