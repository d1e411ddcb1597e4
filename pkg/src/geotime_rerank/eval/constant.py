"""
Constants of the evaluation harness.
"""

from enum import Enum


class Metric(str, Enum):
    """
    Reported retrieval metrics.

    Attributes:
        recall: Share of a query's relevant events found in the top k.
        hit_rate: Share of queries with at least one relevant event in the top k.
        ndcg: Normalized discounted cumulative gain with binary relevance.
        mrr: Mean reciprocal rank of the first relevant event in the top k.
    """

    recall = "recall"
    hit_rate = "hit_rate"
    ndcg = "ndcg"
    mrr = "mrr"


ALL_METRICS = (Metric.recall, Metric.hit_rate, Metric.ndcg, Metric.mrr)

METRIC_LABELS = {
    Metric.recall: "Recall",
    Metric.hit_rate: "HitRate",
    Metric.ndcg: "nDCG",
    Metric.mrr: "MRR",
}

DEFAULT_CUTOFFS = (1, 3, 10, 100)
"""tuple[int, ...]: Cutoffs k every evaluation reports."""

OBJECTIVE_METRIC = Metric.ndcg
OBJECTIVE_CUTOFF = 10
"""int: Grid search maximizes nDCG at this cutoff."""

DEFAULT_GRID_STEP = 0.1

ABLATION_BASELINE = "none"
"""str: Label of the ablation row with every feature enabled."""

QUERY_ID_KEY = "query_id"
RELEVANT_IDS_KEY = "relevant_ids"

SYNTH_MIN_CLUSTER_SIZE = 5
"""int: Events reserved per cluster before any distractor is drawn."""

SYNTH_DISTRACTOR_PATTERN = (
    "twin",
    "near_miss",
    "echo",
    "location",
    "season",
    "echo",
    "near_miss",
    "echo",
    "echo",
    "near_miss",
    "echo",
    "echo",
    "near_miss",
    "echo",
    "echo",
)
"""tuple[str, ...]: Distractor kind of each spare slot of a cluster; later slots are members."""

SYNTH_TWIN_MIN_DISTANCE_KM = 15_000.0
SYNTH_NEAR_MISS_RADIUS_KM = 50.0
SYNTH_NEAR_MISS_SEASON_DAYS = 5
SYNTH_DISC_RADIUS_KM = 300.0
SYNTH_BAND_HALF_WIDTH_DEG = 1.5
SYNTH_SEASON_HALF_WIDTH_DAYS = 15
SYNTH_MIN_CENTER_SEPARATION_KM = 1500.0
SYNTH_FAR_MIN_LAT_OFFSET_DEG = 7.0
SYNTH_OFF_SEASON_MIN_DAYS = 150
SYNTH_CENTER_LATITUDE_RANGE = (-55.0, 65.0)
SYNTH_YEAR_RANGE = (2015, 2024)

SYNTH_CATEGORY_TAGS = (
    "Marine Mammals",
    "Wildfire",
    "Drought",
    "Flooding",
    "Invasive Species",
    "Algal Bloom",
    "Permafrost",
    "Storms",
    "Coastal Erosion",
    "Sea Ice",
    "Birds",
    "Insects",
    "Plants",
    "Lakes and Rivers",
    "Air Quality",
    "Snow",
)
"""tuple[str, ...]: Category tags handed to synthetic clusters, reused cyclically."""

SYNTH_PLACE_SUFFIXES = ("Bay", "River", "Ridge", "Lake", "Island", "Valley", "Point", "Creek")
SYNTH_SYLLABLES = (
    "ka", "lo", "mi", "ru", "te", "va", "no", "si", "pe", "du",
    "ga", "zo", "bi", "ne", "fu", "ya", "ho", "ri", "we", "ta",
)

EVAL_LOGGER_NAME = "EVAL"
