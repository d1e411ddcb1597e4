from .bm25_index import Bm25Index, bm25_retrieve, bm25_topk
from .constant import RetrieverKind
from .dense_index import DenseIndex, dense_retrieve
from .scored_candidate import RetrievalResult, ScoredCandidate
from .similarity import cosine_scores, cosine_similarity
from .tokenizer import tokenize

__all__ = [
    "Bm25Index",
    "DenseIndex",
    "RetrievalResult",
    "RetrieverKind",
    "ScoredCandidate",
    "bm25_retrieve",
    "bm25_topk",
    "cosine_scores",
    "cosine_similarity",
    "dense_retrieve",
    "tokenize",
]
