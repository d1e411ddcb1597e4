"""
The five GT-R feature rankings.

Each ranking starts from a raw permutation 1..n over the candidate set and may divide
individual rank values by a weight or a booster. Adjusted values stay real-valued.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from geotime_rerank.event_model import EventRecord
from geotime_rerank.providers import AbstractProvider

from .constant import EARTH_RADIUS_KM, Feature, LatitudeMode
from .geo_time import haversine_km, latitude_diff, temporal_distance
from .ranking import rank_ascending, rank_descending


@dataclass(frozen=True)
class FeatureRanking:
    """
    One feature's ranking of the candidate set.

    Attributes:
        feature (Feature): Feature name.
        raw (Mapping[str, int]): Raw rank per candidate, a permutation of 1..n.
        adjusted (Mapping[str, float]): Raw rank after weight or booster division.
        signal (Mapping[str, float]): Underlying value (score, km, degrees or days).
    """

    feature: Feature
    raw: Mapping[str, int]
    adjusted: Mapping[str, float]
    signal: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if sorted(self.raw.values()) != list(range(1, len(self.raw) + 1)):
            raise ValueError(f"{self.feature.value} raw ranks are not a permutation of 1..n")
        if self.adjusted.keys() != self.raw.keys():
            raise ValueError(f"{self.feature.value} adjusted ranks cover a different domain")
        if any(not value > 0 for value in self.adjusted.values()):
            raise ValueError(f"{self.feature.value} adjusted ranks must be positive")
        object.__setattr__(self, "raw", MappingProxyType(dict(self.raw)))
        object.__setattr__(self, "adjusted", MappingProxyType(dict(self.adjusted)))
        object.__setattr__(self, "signal", MappingProxyType(dict(self.signal)))

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.raw)


def _divide(raw: Mapping[str, int], divisor: float) -> dict[str, float]:
    if not divisor > 0:
        raise ValueError(f"Rank divisor must be > 0, got {divisor}")
    return {event_id: rank / divisor for event_id, rank in raw.items()}


def semantic_ranking(scores: Mapping[str, float], w_s: float) -> FeatureRanking:
    """Descending rank of the stage-1 scores, divided by the semantic weight."""
    raw = rank_descending(scores)
    return FeatureRanking(Feature.semantic, raw, _divide(raw, w_s), scores)


def category_scores(
    query: EventRecord, candidates: list[EventRecord], provider: AbstractProvider
) -> dict[str, float]:
    """
    Cross-score the query's category snippet against every candidate's snippet.

    A pair where either snippet renders empty (no category tags) scores 0.0.
    """
    query_text = provider.event_snippet(query).rendered
    texts = {z.id: provider.event_snippet(z).rendered for z in candidates}
    scorable = [event_id for event_id, text in texts.items() if text]
    scores = {event_id: 0.0 for event_id in texts}
    if query_text and scorable:
        values = provider.cross_score_many(query_text, [texts[event_id] for event_id in scorable])
        scores.update(zip(scorable, values))
    return scores


def category_ranking_from_scores(scores: Mapping[str, float], w_c: float) -> FeatureRanking:
    raw = rank_descending(scores)
    return FeatureRanking(Feature.category, raw, _divide(raw, w_c), scores)


def category_ranking(
    query: EventRecord,
    candidates: list[EventRecord],
    provider: AbstractProvider,
    w_c: float,
) -> FeatureRanking:
    """Descending rank of snippet cross-scores, divided by the category weight."""
    return category_ranking_from_scores(category_scores(query, candidates, provider), w_c)


def distance_ranking_from_km(
    distances_km: Mapping[str, float], tau_d: float, beta_d: float
) -> FeatureRanking:
    raw = rank_ascending(distances_km)
    adjusted = {
        event_id: rank / beta_d if distances_km[event_id] < tau_d else float(rank)
        for event_id, rank in raw.items()
    }
    return FeatureRanking(Feature.distance, raw, adjusted, distances_km)


def distance_ranking(
    query: EventRecord,
    candidates: list[EventRecord],
    tau_d: float,
    beta_d: float,
    radius_km: float = EARTH_RADIUS_KM,
) -> FeatureRanking:
    """
    Ascending rank of great-circle distance; candidates strictly closer than ``tau_d``
    have their rank divided by ``beta_d``.
    """
    distances = {z.id: haversine_km(query.point, z.point, radius_km) for z in candidates}
    return distance_ranking_from_km(distances, tau_d, beta_d)


def latitude_ranking(
    raw_semantic_ranks: Mapping[str, int],
    distances_km: Mapping[str, float],
    latitude_diffs: Mapping[str, float],
    tau_d: float,
    tau_phi: float,
    beta_phi: float,
    mode: LatitudeMode = LatitudeMode.semantic_seeded,
) -> FeatureRanking:
    """
    Latitude relevance booster.

    The ranking starts from the raw semantic permutation (or, in ``sorted`` mode, from
    ascending latitude differences). Candidates at least ``tau_d`` away and strictly
    inside the ``tau_phi`` band have their rank divided by ``beta_phi``.
    """
    if mode == LatitudeMode.sorted:
        raw = rank_ascending(latitude_diffs)
    else:
        raw = dict(raw_semantic_ranks)
    adjusted = {
        event_id: rank / beta_phi
        if distances_km[event_id] >= tau_d and latitude_diffs[event_id] < tau_phi
        else float(rank)
        for event_id, rank in raw.items()
    }
    return FeatureRanking(Feature.latitude, raw, adjusted, latitude_diffs)


def latitude_diffs(query: EventRecord, candidates: list[EventRecord]) -> dict[str, float]:
    return {z.id: latitude_diff(query, z) for z in candidates}


def temporal_ranking_from_days(days: Mapping[str, int]) -> FeatureRanking:
    raw = rank_ascending(days)
    return FeatureRanking(Feature.temporal, raw, {k: float(v) for k, v in raw.items()}, days)


def temporal_ranking(query: EventRecord, candidates: list[EventRecord]) -> FeatureRanking:
    """Ascending rank of cyclic day-of-year distance; no weight and no booster."""
    days = {z.id: temporal_distance(query.date, z.date) for z in candidates}
    return temporal_ranking_from_days(days)
