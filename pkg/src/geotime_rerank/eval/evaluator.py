import logging
from collections.abc import Mapping, Sequence

import numpy as np

from geotime_rerank.errors import EvaluationError

from .constant import ALL_METRICS, DEFAULT_CUTOFFS, EVAL_LOGGER_NAME, Metric
from .eval_report import EvalReport, metric_key
from .metrics import hit_at_k, ndcg_at_k, recall_at_k, reciprocal_rank_at_k

_PER_QUERY = {
    Metric.recall: recall_at_k,
    Metric.hit_rate: hit_at_k,
    Metric.ndcg: ndcg_at_k,
    Metric.mrr: reciprocal_rank_at_k,
}


def evaluate_run(
    runs: Mapping[str, Sequence[str]],
    judgments: Mapping[str, frozenset[str] | set[str]],
    cutoffs: Sequence[int] = DEFAULT_CUTOFFS,
    name: str = "run",
    manifest: dict | None = None,
    logger: logging.Logger | None = None,
) -> EvalReport:
    """
    Evaluate ranked runs against judgments at every cutoff.

    Every judged query with a non-empty relevant set is evaluated; a judged query absent
    from ``runs`` counts as an empty ranking. Queries are processed in sorted order, so
    the report never depends on iteration order.

    Args:
        runs (Mapping[str, Sequence[str]]): query id -> ranked event ids.
        judgments (Mapping[str, set[str]]): query id -> relevant event ids.
        cutoffs (Sequence[int]): Cutoffs k.
        name (str): Run label.
        manifest (dict | None): Run description copied into the report.
        logger (logging.Logger | None): Logger for the skip count.

    Raises:
        EvaluationError: If no judged query has a relevant event.
    """
    logger = logger or logging.getLogger(EVAL_LOGGER_NAME)
    cutoffs = tuple(sorted(set(int(k) for k in cutoffs)))
    if not cutoffs or cutoffs[0] < 1:
        raise ValueError(f"Cutoffs must be positive integers, got {cutoffs}")

    query_ids = sorted(query_id for query_id, relevant in judgments.items() if relevant)
    skipped = len(judgments) - len(query_ids)
    if not query_ids:
        raise EvaluationError("No judged query has a non-empty relevant set.")
    if skipped:
        logger.warning(f"Run '{name}': skipped {skipped} queries without relevant events")

    per_query: dict[str, dict[str, float]] = {}
    for query_id in query_ids:
        ranked = list(runs.get(query_id, ()))
        relevant = judgments[query_id]
        per_query[query_id] = {
            metric_key(metric, k): 100.0 * _PER_QUERY[metric](ranked, relevant, k)
            for metric in ALL_METRICS
            for k in cutoffs
        }

    metrics = {
        metric.value: {
            k: float(np.mean([per_query[q][metric_key(metric, k)] for q in query_ids]))
            for k in cutoffs
        }
        for metric in ALL_METRICS
    }
    return EvalReport(
        name=name,
        cutoffs=cutoffs,
        metrics=metrics,
        per_query=per_query,
        n_evaluated=len(query_ids),
        n_skipped=skipped,
        manifest=dict(manifest or {}),
    )
