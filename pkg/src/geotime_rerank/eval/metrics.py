"""
Retrieval metrics with binary relevance.

Per-query functions take one ranked id list; aggregate functions take runs keyed by query id
and average over queries with a non-empty relevant set.
"""

from collections.abc import Collection, Mapping, Sequence

import numpy as np

from geotime_rerank.errors import EvaluationError


def _check_k(k: int) -> None:
    if k < 0:
        raise ValueError(f"Cutoff k must be >= 0, got {k}")


def _require_relevant(relevant: Collection[str]) -> None:
    if not relevant:
        raise ValueError("Relevant set is empty.")


def recall_at_k(ranked_ids: Sequence[str], relevant: Collection[str], k: int) -> float:
    """|top-k ∩ relevant| / |relevant|."""
    _check_k(k)
    _require_relevant(relevant)
    return len(set(ranked_ids[:k]) & set(relevant)) / len(set(relevant))


def hit_at_k(ranked_ids: Sequence[str], relevant: Collection[str], k: int) -> float:
    """1.0 if any relevant id is in the top k, else 0.0."""
    _check_k(k)
    relevant = set(relevant)
    return 1.0 if any(event_id in relevant for event_id in ranked_ids[:k]) else 0.0


def reciprocal_rank_at_k(ranked_ids: Sequence[str], relevant: Collection[str], k: int) -> float:
    """1 / rank of the first relevant id within the top k, 0.0 if there is none."""
    _check_k(k)
    relevant = set(relevant)
    for rank, event_id in enumerate(ranked_ids[:k], start=1):
        if event_id in relevant:
            return 1.0 / rank
    return 0.0


def ndcg_at_k(ranked_ids: Sequence[str], relevant: Collection[str], k: int) -> float:
    """
    DCG of the top k over the ideal DCG, where the ideal ranking puts
    min(k, |relevant|) relevant ids first.
    """
    _check_k(k)
    _require_relevant(relevant)
    relevant = set(relevant)
    top = ranked_ids[:k]
    gains = np.array([1.0 if event_id in relevant else 0.0 for event_id in top])
    if not gains.any():
        return 0.0
    discounts = 1.0 / np.log2(np.arange(2, len(top) + 2))
    ideal = (1.0 / np.log2(np.arange(2, min(k, len(relevant)) + 2))).sum()
    return float((gains * discounts).sum() / ideal)


def _evaluable(judgments: Mapping[str, Collection[str]]) -> list[str]:
    query_ids = sorted(query_id for query_id, relevant in judgments.items() if relevant)
    if not query_ids:
        raise EvaluationError("No query has a non-empty relevant set.")
    return query_ids


def hit_rate_at_k(
    runs: Mapping[str, Sequence[str]], judgments: Mapping[str, Collection[str]], k: int
) -> float:
    """Share of evaluable queries with at least one relevant id in the top k."""
    query_ids = _evaluable(judgments)
    return float(np.mean([hit_at_k(runs.get(q, ()), judgments[q], k) for q in query_ids]))


def mrr_at_k(
    runs: Mapping[str, Sequence[str]], judgments: Mapping[str, Collection[str]], k: int
) -> float:
    """Mean over evaluable queries of the reciprocal rank of the first relevant id in the top k."""
    query_ids = _evaluable(judgments)
    return float(
        np.mean([reciprocal_rank_at_k(runs.get(q, ()), judgments[q], k) for q in query_ids])
    )
