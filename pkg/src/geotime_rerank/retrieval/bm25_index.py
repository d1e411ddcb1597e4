"""
Okapi BM25 sparse retrieval over tokenized structured text.
"""

import math

import numpy as np
from rank_bm25 import BM25Okapi

from geotime_rerank.event_model import Corpus, EventRecord, SegmentSpec, build_structured_text

from .constant import BM25_B, BM25_K1
from .scored_candidate import RetrievalResult, top_candidates
from .tokenizer import tokenize


class _PlusOneIdfBM25Okapi(BM25Okapi):
    """BM25Okapi with the non-negative IDF ln((N - df + 0.5) / (df + 0.5) + 1)."""

    def _calc_idf(self, nd: dict[str, int]) -> None:
        self.df = dict(nd)
        for word, freq in nd.items():
            self.idf[word] = math.log((self.corpus_size - freq + 0.5) / (freq + 0.5) + 1.0)


class Bm25Index:
    """
    Immutable BM25 index over a list of documents.

    Attributes:
        ids (tuple[str, ...]): Document ids in corpus order.
        k1 (float): Term-frequency saturation.
        b (float): Length normalization.
        spec (SegmentSpec | None): Structured-text spec the documents were built with.
    """

    def __init__(
        self,
        ids: list[str],
        documents: list[list[str]],
        k1: float = BM25_K1,
        b: float = BM25_B,
        spec: SegmentSpec | None = None,
    ) -> None:
        if len(ids) != len(documents):
            raise ValueError(f"{len(ids)} ids for {len(documents)} documents")
        self.ids = tuple(ids)
        self.k1 = k1
        self.b = b
        self.spec = spec
        self._bm25 = _PlusOneIdfBM25Okapi(documents, k1=k1, b=b) if documents else None

    @classmethod
    def from_corpus(
        cls, corpus: Corpus, spec: SegmentSpec, k1: float = BM25_K1, b: float = BM25_B
    ) -> "Bm25Index":
        documents = [tokenize(build_structured_text(event, spec)) for event in corpus]
        return cls(corpus.ids, documents, k1=k1, b=b, spec=spec)

    @property
    def doc_freqs(self) -> dict[str, int]:
        """Number of documents containing each term."""
        return dict(self._bm25.df) if self._bm25 else {}

    @property
    def doc_lengths(self) -> list[int]:
        return list(self._bm25.doc_len) if self._bm25 else []

    @property
    def avgdl(self) -> float:
        return float(self._bm25.avgdl) if self._bm25 else 0.0

    def get_scores(self, query_tokens: list[str]) -> np.ndarray:
        """BM25 score of every document in corpus order."""
        if self._bm25 is None or self._bm25.avgdl == 0:
            return np.zeros(len(self.ids))
        return np.asarray(self._bm25.get_scores(query_tokens), dtype=np.float64)

    def __len__(self) -> int:
        return len(self.ids)


def bm25_topk(
    index: Bm25Index, query_tokens: list[str], k: int, exclude_id: str | None = None
) -> RetrievalResult:
    """
    Top-``k`` documents by BM25 score, ties broken by ascending id.

    ``k`` may exceed the corpus size. An empty query returns no candidates.
    """
    if not query_tokens:
        return RetrievalResult()
    scores = index.get_scores(query_tokens)
    return top_candidates(list(index.ids), scores.tolist(), k, exclude_id=exclude_id)


def bm25_retrieve(
    query: EventRecord, index: Bm25Index, spec: SegmentSpec, n_retrieve: int
) -> RetrievalResult:
    """Stage-1 BM25 retrieval for a corpus event, the query itself excluded."""
    if index.spec is not None and index.spec != spec:
        raise ValueError(f"Index was built with '{index.spec.label}', not '{spec.label}'")
    return bm25_topk(
        index, tokenize(build_structured_text(query, spec)), n_retrieve, exclude_id=query.id
    )
