"""
Constants for stage-1 candidate retrieval.
"""

from enum import Enum


class RetrieverKind(str, Enum):
    """
    Stage-1 retrievers.

    Attributes:
        dense: Cosine similarity over provider embeddings of the structured text.
        bm25: Okapi BM25 over the tokenized structured text.
    """

    dense = "dense"
    bm25 = "bm25"


TOKEN_PATTERN = r"[^\W_]+"
"""str: A token is a maximal run of Unicode letters and digits."""

BM25_K1 = 1.5
BM25_B = 0.75

DEFAULT_N_RETRIEVE = 100
"""int: Size of the stage-1 candidate set."""

DENSE_INDEX_VECTORS_FILE = "vectors.jsonl"
DENSE_INDEX_MANIFEST_FILE = "manifest.json"

INDEX_ID_KEY = "id"
INDEX_VALUES_KEY = "values"

RETRIEVAL_LOGGER_NAME = "RETRIEVAL"
