from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .constant import Feature
from .feature_rankings import FeatureRanking
from .ranking import rank_descending


@dataclass(frozen=True)
class FusedResult:
    """
    Reciprocal Rank Fusion of the enabled feature rankings.

    Attributes:
        scores (Mapping[str, float]): RRF score per candidate.
        ranking (tuple[str, ...]): All candidates by descending RRF score (id tie-break).
        top_ids (tuple[str, ...]): The first ``n_rerank`` ids of ``ranking``.
        rankings (Mapping[Feature, FeatureRanking]): The fused feature rankings.
    """

    scores: Mapping[str, float]
    ranking: tuple[str, ...]
    top_ids: tuple[str, ...]
    rankings: Mapping[Feature, FeatureRanking] = field(default_factory=dict)

    @property
    def final_ranks(self) -> dict[str, int]:
        return {event_id: rank for rank, event_id in enumerate(self.ranking, start=1)}

    def candidate_dict(self, event_id: str) -> dict:
        """Per-candidate diagnostics: RRF score, final rank and every fused feature."""
        features: dict[str, dict] = {}
        for feature, ranking in self.rankings.items():
            entry: dict = {"raw": ranking.raw[event_id]}
            if feature != Feature.temporal:
                entry["adjusted"] = ranking.adjusted[event_id]
            signal = ranking.signal.get(event_id)
            if feature in (Feature.semantic, Feature.category):
                entry["score"] = signal
            elif feature == Feature.distance:
                entry["km"] = signal
            elif feature == Feature.latitude:
                entry["deg"] = signal
            else:
                entry["days"] = signal
            features[feature.value] = entry
        return {
            "id": event_id,
            "rrf_score": self.scores[event_id],
            "final_rank": self.final_ranks[event_id],
            "features": features,
        }

    def to_dict(self, query_id: str, params: dict, all_candidates: bool = False) -> dict:
        ids = self.ranking if all_candidates else self.top_ids
        return {
            "query_id": query_id,
            "params": params,
            "candidates": [self.candidate_dict(event_id) for event_id in ids],
        }


def rrf_fuse(
    rankings: list[FeatureRanking], rrf_k: float, n_rerank: int | None = None
) -> FusedResult:
    """
    Fuse feature rankings with f(z) = sum over rankings of 1 / (rrf_k + r(z)).

    Args:
        rankings (list[FeatureRanking]): Rankings over one shared candidate domain.
        rrf_k (float): Positive RRF constant.
        n_rerank (int | None): Length of ``top_ids``; None keeps every candidate.

    Raises:
        ValueError: If ``rrf_k`` is not positive or the rankings cover different candidates.
    """
    if not rrf_k > 0:
        raise ValueError(f"rrf_k must be > 0, got {rrf_k}")
    if not rankings:
        raise ValueError("rrf_fuse needs at least one ranking.")
    domain = rankings[0].domain
    for ranking in rankings[1:]:
        if ranking.domain != domain:
            raise ValueError(
                f"Ranking domains differ: {rankings[0].feature.value} vs {ranking.feature.value}"
            )

    scores = {
        event_id: sum(1.0 / (rrf_k + ranking.adjusted[event_id]) for ranking in rankings)
        for event_id in sorted(domain)
    }
    final = rank_descending(scores)
    ordered = tuple(sorted(final, key=final.__getitem__))
    top = ordered if n_rerank is None else ordered[:n_rerank]
    return FusedResult(
        scores=MappingProxyType(scores),
        ranking=ordered,
        top_ids=top,
        rankings=MappingProxyType({ranking.feature: ranking for ranking in rankings}),
    )
