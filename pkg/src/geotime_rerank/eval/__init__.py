from .ablation import ABLATION_ORDER, AblationResult, AblationRow, ablation
from .constant import ALL_METRICS, DEFAULT_CUTOFFS, Metric
from .eval_report import EvalReport, format_reports, format_table, metric_key
from .evaluator import evaluate_run
from .grid_search import GridSearchResult, WeightGridPoint, grid_search_weights, weight_grid
from .judgments import Judgments, load_judgments
from .metrics import (
    hit_at_k,
    hit_rate_at_k,
    mrr_at_k,
    ndcg_at_k,
    recall_at_k,
    reciprocal_rank_at_k,
)
from .runs import fused_run, retrieval_run
from .segment_comparison import SegmentComparisonRow, compare_segments, format_segment_table
from .synth_corpus import synth_corpus

__all__ = [
    "ABLATION_ORDER",
    "ALL_METRICS",
    "AblationResult",
    "AblationRow",
    "DEFAULT_CUTOFFS",
    "EvalReport",
    "GridSearchResult",
    "Judgments",
    "Metric",
    "SegmentComparisonRow",
    "WeightGridPoint",
    "ablation",
    "compare_segments",
    "evaluate_run",
    "format_reports",
    "format_segment_table",
    "format_table",
    "fused_run",
    "grid_search_weights",
    "hit_at_k",
    "hit_rate_at_k",
    "load_judgments",
    "metric_key",
    "mrr_at_k",
    "ndcg_at_k",
    "recall_at_k",
    "reciprocal_rank_at_k",
    "retrieval_run",
    "synth_corpus",
    "weight_grid",
]
