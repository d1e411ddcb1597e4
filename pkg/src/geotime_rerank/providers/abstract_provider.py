import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from tqdm.contrib.concurrent import thread_map

from geotime_rerank.errors import MalformedOutputError, ProviderError
from geotime_rerank.event_model import EventRecord
from geotime_rerank.event_model.constant import RAW_SEGMENT_JOINER
from geotime_rerank.retrieval.similarity import cosine_similarity

from .category_snippet import CategorySnippet
from .constant import NER_PROMPT_VERSION, PROVIDER_LOGGER_NAME, CrossEncodingMode
from .provider_cache import ProviderCache, content_digest
from .provider_config import ProviderConfig


@dataclass
class ProviderStats:
    """
    Counters of the work a provider did since construction.

    Attributes:
        computed (int): Embeddings fetched from the model.
        cache_hits (int): Embeddings served from the cache.
        snippets_computed (int): Entity extractions sent to the model.
        snippet_fallbacks (int): Extractions that fell back to a categories-only snippet.
    """

    computed: int = 0
    cache_hits: int = 0
    snippets_computed: int = 0
    snippet_fallbacks: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def ner_input_text(event: EventRecord) -> str:
    """Text handed to entity extraction: the raw title and summary."""
    return RAW_SEGMENT_JOINER.join(part for part in (event.title, event.summary) if part)


class AbstractProvider(ABC):
    """
    Base class of the model boundary: bi-encoding, cross-scoring and entity extraction.

    Subclasses implement the uncached model calls; this class owns caching, batching,
    dimension checks, overrides and the malformed-output fallback.

    Attributes:
        config (ProviderConfig): Provider configuration.
        provider_id (str): Stable identifier used to name cache files.
        dimension (int): Embedding dimension; 0 until the first vector when undeclared.
        overrides (dict[str, CategorySnippet]): Curated snippets per event id.
        cache (ProviderCache): Content-addressed result cache.
        stats (ProviderStats): Work counters.
    """

    cross_encoding_mode: CrossEncodingMode = CrossEncodingMode.cosine_over_embeddings

    def __init__(
        self,
        config: ProviderConfig,
        overrides: dict[str, CategorySnippet] | None = None,
        logger: logging.Logger | None = None,
    ) -> None:
        self.config = config
        self.logger = logger or logging.getLogger(PROVIDER_LOGGER_NAME)
        self.overrides = dict(overrides or {})
        self.dimension = config.dimension
        self.stats = ProviderStats()
        self.cache = ProviderCache(
            cache_dir=Path(config.cache_dir) if config.cache_dir else None,
            provider_id=self.provider_id,
            embedding_model=self.embedding_model,
            chat_model=self.chat_model,
        )

    @property
    @abstractmethod
    def provider_id(self) -> str:
        """Identifier of the backing service, part of every cache file name."""

    @property
    @abstractmethod
    def embedding_model(self) -> str:
        """Model name used for embeddings."""

    @property
    @abstractmethod
    def chat_model(self) -> str:
        """Model name used for entity extraction."""

    @abstractmethod
    def _embed_uncached(self, texts: list[str]) -> list[np.ndarray]:
        """
        Embed one batch of texts with the model.

        Returns:
            list[np.ndarray]: One vector per text, in input order.
        """

    @abstractmethod
    def _extract_uncached(self, event_text: str, category_tags: list[str]) -> CategorySnippet:
        """
        Run entity extraction for non-empty ``category_tags``.

        Raises:
            MalformedOutputError: If the model never returned a usable reply.
        """

    def _score_uncached(self, text_a: str, text_b: str) -> float:
        """Cross-score two snippets with a dedicated scoring model (scoring endpoint mode)."""
        raise NotImplementedError(f"{type(self).__name__} has no scoring endpoint")

    def _check_dimension(self, vector: np.ndarray) -> None:
        if vector.ndim != 1 or not np.all(np.isfinite(vector)):
            raise ProviderError("Provider returned a non-finite or non-flat embedding.")
        if self.dimension == 0:
            self.dimension = int(vector.shape[0])
        elif vector.shape[0] != self.dimension:
            raise ProviderError(
                f"Embedding dimension mismatch: expected {self.dimension}, got {vector.shape[0]}"
            )

    def embed_batch(self, texts: list[str]) -> list[np.ndarray]:
        """
        Embed texts, serving repeats and known contents from the cache.

        Args:
            texts (list[str]): Non-empty list of non-empty texts.

        Returns:
            list[np.ndarray]: One read-only vector per input text, order preserved.

        Raises:
            ValueError: If ``texts`` is empty or contains an empty text.
            ProviderError: On transport failure after retries or a dimension mismatch.
        """
        if not texts:
            raise ValueError("embed_batch requires at least one text.")
        for i, text in enumerate(texts):
            if not text:
                raise ValueError(f"Cannot embed empty text at position {i}.")

        digests = [content_digest(text) for text in texts]
        missing: dict[str, str] = {}
        for digest, text in zip(digests, texts):
            if self.cache.get_embedding(digest) is None and digest not in missing:
                missing[digest] = text

        self.stats.cache_hits += len(set(digests)) - len(missing)
        if missing:
            pending = list(missing.items())
            batch_size = self.config.batch_size
            batches = [pending[i : i + batch_size] for i in range(0, len(pending), batch_size)]

            def embed_one_batch(batch: list[tuple[str, str]]) -> list[np.ndarray]:
                vectors = self._embed_uncached([text for _, text in batch])
                if len(vectors) != len(batch):
                    raise ProviderError(
                        f"Provider returned {len(vectors)} vectors for {len(batch)} texts."
                    )
                return [np.asarray(v, dtype=np.float64) for v in vectors]

            if len(batches) == 1:
                results = [embed_one_batch(batches[0])]
            else:
                results = thread_map(
                    embed_one_batch,
                    batches,
                    max_workers=self.config.max_concurrency,
                    desc="Embedding",
                    unit="batch",
                )
            for batch, vectors in zip(batches, results):
                for (digest, _), vector in zip(batch, vectors):
                    self._check_dimension(vector)
                    self.cache.put_embedding(digest, vector)
            self.stats.computed += len(pending)
            self.logger.debug(f"Embedded {len(pending)} new texts in {len(batches)} batches")

        return [self.cache.get_embedding(digest) for digest in digests]

    def embed(self, text: str) -> np.ndarray:
        return self.embed_batch([text])[0]

    def cross_score(self, text_a: str, text_b: str) -> float:
        """
        Symmetric similarity of two snippets in [-1, 1].

        Raises:
            ValueError: If either text is empty.
        """
        if not text_a or not text_b:
            raise ValueError("cross_score requires two non-empty texts.")
        if self.cross_encoding_mode == CrossEncodingMode.cosine_over_embeddings:
            vec_a, vec_b = self.embed_batch([text_a, text_b])
            return cosine_similarity(vec_a, vec_b)

        digest = content_digest("\x1f".join(sorted((text_a, text_b))))
        cached = self.cache.get_score(digest)
        if cached is not None:
            return cached
        score = float(np.clip(self._score_uncached(text_a, text_b), -1.0, 1.0))
        self.cache.put_score(digest, score)
        return score

    def cross_score_many(self, text_a: str, texts_b: list[str]) -> list[float]:
        """``cross_score(text_a, b)`` for every ``b``, embedding all texts in one batch."""
        if not texts_b:
            return []
        if self.cross_encoding_mode != CrossEncodingMode.cosine_over_embeddings:
            return [self.cross_score(text_a, text_b) for text_b in texts_b]
        if not text_a or not all(texts_b):
            raise ValueError("cross_score requires non-empty texts.")
        vectors = self.embed_batch([text_a, *texts_b])
        return [cosine_similarity(vectors[0], vector) for vector in vectors[1:]]

    def extract_entities(
        self,
        event_text: str,
        category_tags: list[str] | tuple[str, ...],
        event_id: str | None = None,
    ) -> CategorySnippet:
        """
        Category-instructed entity extraction.

        Overrides for ``event_id`` win over model output. A model that keeps returning
        malformed output yields a categories-only snippet, which is logged and not cached.
        """
        if event_id is not None and event_id in self.overrides:
            return self.overrides[event_id]
        category_tags = list(category_tags)
        if not category_tags:
            return CategorySnippet()

        digest = content_digest(
            "\x1f".join([NER_PROMPT_VERSION, event_text, *category_tags])
        )
        cached = self.cache.get_snippet(digest)
        if cached is not None:
            return cached

        self.stats.snippets_computed += 1
        try:
            snippet = self._extract_uncached(event_text, category_tags)
        except MalformedOutputError as e:
            self.stats.snippet_fallbacks += 1
            self.logger.warning(
                f"Entity extraction for event '{event_id}' fell back to categories only: {e}"
            )
            return CategorySnippet.categories_only(category_tags)
        self.cache.put_snippet(digest, snippet)
        return snippet

    def event_snippet(self, event: EventRecord) -> CategorySnippet:
        return self.extract_entities(ner_input_text(event), event.categories, event_id=event.id)

    def manifest(self) -> dict:
        """Provider description recorded in every run manifest."""
        return {
            "kind": self.config.kind.value,
            "provider_id": self.provider_id,
            "embedding_model": self.embedding_model,
            "chat_model": self.chat_model,
            "dimension": self.dimension,
            "cross_encoding_mode": self.cross_encoding_mode.value,
            "ner_prompt_version": NER_PROMPT_VERSION,
            "overrides": len(self.overrides),
        }
