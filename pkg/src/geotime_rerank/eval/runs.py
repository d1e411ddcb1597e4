"""
Turning prepared queries into ranked runs for evaluation.
"""

from geotime_rerank.gtr import GtrParams, GtrReranker, PreparedQuery


def retrieval_run(prepared: dict[str, PreparedQuery]) -> dict[str, list[str]]:
    """Stage-1 order of every prepared query."""
    return {query_id: p.retrieval.ids for query_id, p in prepared.items()}


def fused_run(
    reranker: GtrReranker, prepared: dict[str, PreparedQuery], params: GtrParams
) -> dict[str, list[str]]:
    """Full fused order over Z_retrieve of every prepared query."""
    return {
        query_id: list(reranker.fuse(p, params).ranking) for query_id, p in prepared.items()
    }
