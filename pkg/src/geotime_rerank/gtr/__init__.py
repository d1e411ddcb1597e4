from .constant import ALL_FEATURES, Feature, LatitudeMode
from .feature_rankings import (
    FeatureRanking,
    category_ranking,
    distance_ranking,
    latitude_ranking,
    semantic_ranking,
    temporal_ranking,
)
from .geo_time import destination_point, haversine_km, latitude_diff, temporal_distance
from .gtr_params import GtrParams
from .gtr_reranker import GtrReranker, PreparedQuery, gtr_rerank
from .ranking import rank_ascending, rank_descending
from .rrf import FusedResult, rrf_fuse

__all__ = [
    "ALL_FEATURES",
    "Feature",
    "FeatureRanking",
    "FusedResult",
    "GtrParams",
    "GtrReranker",
    "LatitudeMode",
    "PreparedQuery",
    "category_ranking",
    "destination_point",
    "distance_ranking",
    "gtr_rerank",
    "haversine_km",
    "latitude_diff",
    "latitude_ranking",
    "rank_ascending",
    "rank_descending",
    "rrf_fuse",
    "semantic_ranking",
    "temporal_distance",
    "temporal_ranking",
]
