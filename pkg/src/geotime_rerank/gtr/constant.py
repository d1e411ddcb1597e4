"""
Constants and defaults of Geo-Time re-ranking.
"""

from enum import Enum


class Feature(str, Enum):
    """
    Ranking features fused by GT-R, in ablation-table order of removal.

    Attributes:
        semantic: Stage-1 similarity of the structured texts.
        category: Cross-score of the category snippets.
        distance: Great-circle distance, boosted inside the distance threshold.
        latitude: Semantic standing, boosted for far events inside the latitude band.
        temporal: Cyclic day-of-year distance.
    """

    semantic = "semantic"
    category = "category"
    distance = "distance"
    latitude = "latitude"
    temporal = "temporal"


ALL_FEATURES = (
    Feature.semantic,
    Feature.category,
    Feature.distance,
    Feature.latitude,
    Feature.temporal,
)


class LatitudeMode(str, Enum):
    """
    How the latitude feature is seeded before the band boost.

    Attributes:
        semantic_seeded: Start from the raw semantic permutation.
        sorted: Start from the ascending order of latitude differences.
    """

    semantic_seeded = "semantic_seeded"
    sorted = "sorted"


DEFAULT_N_RERANK = 10
DEFAULT_TAU_D_KM = 500.0
DEFAULT_BETA_D = 2.0
DEFAULT_TAU_PHI_DEG = 5.0
DEFAULT_BETA_PHI = 2.0
DEFAULT_W_S = 0.1
DEFAULT_W_C = 0.9
DEFAULT_RRF_K = 60.0
"""float: RRF smoothing constant k in 1 / (k + r)."""

EARTH_RADIUS_KM = 6371.0
"""float: Mean earth radius for the haversine distance."""

GTR_LOGGER_NAME = "GTR"
