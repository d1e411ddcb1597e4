"""
Stage-1 retrieval quality under different structured-text variants.
"""

import logging
from dataclasses import dataclass

from geotime_rerank.event_model import DEFAULT_SEGMENT_VARIANTS, Corpus, SegmentSpec
from geotime_rerank.providers import AbstractProvider
from geotime_rerank.retrieval import (
    Bm25Index,
    DenseIndex,
    RetrieverKind,
    bm25_retrieve,
    dense_retrieve,
)

from .constant import EVAL_LOGGER_NAME, Metric
from .eval_report import EvalReport, column_label, format_table, metric_columns
from .evaluator import evaluate_run
from .judgments import Judgments


@dataclass
class SegmentComparisonRow:
    spec: SegmentSpec
    retriever: RetrieverKind
    report: EvalReport

    def to_dict(self) -> dict:
        return {
            "segments": self.spec.label,
            "retriever": self.retriever.value,
            "metrics": self.report.flat(),
        }


def compare_segments(
    corpus: Corpus,
    judgments: Judgments,
    provider: AbstractProvider,
    variants: tuple[SegmentSpec, ...] = DEFAULT_SEGMENT_VARIANTS,
    n_retrieve: int = 100,
    logger: logging.Logger | None = None,
) -> list[SegmentComparisonRow]:
    """
    Recall and HitRate at ``n_retrieve`` of BM25 and dense retrieval for every variant.
    """
    logger = logger or logging.getLogger(EVAL_LOGGER_NAME)
    query_ids = judgments.evaluable_ids
    rows: list[SegmentComparisonRow] = []
    for spec in variants:
        bm25_index = Bm25Index.from_corpus(corpus, spec)
        dense_index = DenseIndex.build(corpus, spec, provider)
        runs = {
            RetrieverKind.bm25: {
                q: bm25_retrieve(corpus.get(q), bm25_index, spec, n_retrieve).ids for q in query_ids
            },
            RetrieverKind.dense: {
                q: dense_retrieve(corpus.get(q), dense_index, spec, n_retrieve, provider).ids
                for q in query_ids
            },
        }
        for retriever, run in runs.items():
            report = evaluate_run(
                run,
                judgments,
                (n_retrieve,),
                name=f"{retriever.value}: {spec.label}",
                manifest={"segment_spec": spec.to_dict()},
                logger=logger,
            )
            rows.append(SegmentComparisonRow(spec, retriever, report))
            logger.info(
                f"{retriever.value} / {spec.label}: "
                f"Recall@{n_retrieve}={report.value(Metric.recall, n_retrieve):.1f}"
            )
    return rows


def format_segment_table(rows: list[SegmentComparisonRow], n_retrieve: int = 100) -> str:
    columns = metric_columns((n_retrieve,), (Metric.recall, Metric.hit_rate))
    table_rows = [
        (
            f"{row.retriever.value}: {row.spec.label}",
            {column_label(k): v for k, v in row.report.flat().items()},
        )
        for row in rows
    ]
    return format_table(table_rows, [column_label(c) for c in columns], first_header="Input")
