"""
Deterministic offline provider: feature-hashing embeddings and a rule-based entity tagger.
"""

import hashlib
import logging
import re

import numpy as np

from geotime_rerank.retrieval.tokenizer import tokenize

from .abstract_provider import AbstractProvider
from .category_snippet import CategorySnippet
from .constant import (
    MOCK_CHAT_MODEL,
    MOCK_DIMENSION,
    MOCK_EMBEDDING_MODEL,
    MOCK_HASH_SEED,
    MOCK_MIN_TAG_WORD_LEN,
    MOCK_TRIGRAM_SIZE,
    ProviderKind,
)
from .provider_config import ProviderConfig

_HASH_KEY = MOCK_HASH_SEED.to_bytes(8, "little")
_CAPITALIZED_SPAN_RE = re.compile(r"\b[A-Z][\w'-]+(?:\s+[A-Z][\w'-]+)+")


def _hash_feature(feature: str) -> int:
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8, key=_HASH_KEY).digest()
    return int.from_bytes(digest, "little")


def mock_features(text: str) -> list[str]:
    """Token unigrams (``w:``) followed by per-token character trigrams (``t:``)."""
    tokens = tokenize(text)
    features = [f"w:{token}" for token in tokens]
    for token in tokens:
        features.extend(
            f"t:{token[i : i + MOCK_TRIGRAM_SIZE]}"
            for i in range(len(token) - MOCK_TRIGRAM_SIZE + 1)
        )
    return features


def mock_embed(text: str) -> np.ndarray:
    """
    Signed feature-hashing embedding of ``text`` into ``MOCK_DIMENSION`` buckets.

    Every feature adds +1 or -1 to one bucket. The result is L2-normalized; a text
    whose features cancel out (or that has none) maps to the first basis vector.
    """
    vector = np.zeros(MOCK_DIMENSION, dtype=np.float64)
    for feature in mock_features(text):
        h = _hash_feature(feature)
        vector[h % MOCK_DIMENSION] += -1.0 if (h >> 32) & 1 else 1.0
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        vector[0] = 1.0
        return vector
    return vector / norm


def _tag_words(tag: str) -> list[str]:
    return [word for word in tokenize(tag) if len(word) >= MOCK_MIN_TAG_WORD_LEN]


def mock_extract_entities(event_text: str, category_tags: list[str]) -> CategorySnippet:
    """
    Rule-based stand-in for category-instructed entity extraction.

    Entities are capitalized multi-word spans and single tokens that contain a word of
    some category tag. A span goes to the first tag whose word it contains, otherwise to
    the first tag. Entity text is lowercased and deduplicated.
    """
    if not category_tags:
        return CategorySnippet()
    words_by_tag = [(tag, _tag_words(tag)) for tag in category_tags]

    def tag_for(text: str) -> str | None:
        for tag, words in words_by_tag:
            if any(word in text for word in words):
                return tag
        return None

    entities: dict[str, str] = {}
    for match in _CAPITALIZED_SPAN_RE.finditer(event_text):
        span = " ".join(match.group(0).lower().split())
        entities.setdefault(span, tag_for(span) or category_tags[0])
    for token in tokenize(event_text):
        tag = tag_for(token)
        if tag is not None:
            entities.setdefault(token, tag)
    return CategorySnippet(
        categories=tuple(category_tags), entities=tuple(entities.items())
    )


class MockProvider(AbstractProvider):
    """
    Offline provider used for tests and desk-scale experiments.

    Stateless apart from the shared result cache: every output is a pure function of its input.
    """

    def __init__(
        self,
        config: ProviderConfig,
        overrides: dict[str, CategorySnippet] | None = None,
        logger: logging.Logger | None = None,
    ) -> None:
        if config.kind != ProviderKind.mock:
            raise ValueError(f"MockProvider cannot serve provider kind '{config.kind.value}'")
        if config.dimension not in (0, MOCK_DIMENSION):
            raise ValueError(
                f"Mock embeddings have dimension {MOCK_DIMENSION}, not {config.dimension}"
            )
        super().__init__(config, overrides=overrides, logger=logger)
        self.dimension = MOCK_DIMENSION

    @property
    def provider_id(self) -> str:
        return ProviderKind.mock.value

    @property
    def embedding_model(self) -> str:
        return MOCK_EMBEDDING_MODEL

    @property
    def chat_model(self) -> str:
        return MOCK_CHAT_MODEL

    def _embed_uncached(self, texts: list[str]) -> list[np.ndarray]:
        return [mock_embed(text) for text in texts]

    def _extract_uncached(self, event_text: str, category_tags: list[str]) -> CategorySnippet:
        return mock_extract_entities(event_text, category_tags)
