"""
OpenAI-compatible HTTP provider.

Embeddings go to ``{endpoint}/v1/embeddings``, entity extraction to
``{endpoint}/v1/chat/completions`` with a JSON-object reply, and optionally category
snippets are cross-scored by a rerank-style scoring endpoint.
"""

import json
import logging
import os
import time
from collections.abc import Callable
from typing import Any, TypeVar

import httpx
import jinja2
import numpy as np
import openai

from geotime_rerank.errors import MalformedOutputError, ProviderError

from .abstract_provider import AbstractProvider
from .category_snippet import CategorySnippet
from .constant import (
    API_VERSION_PREFIX,
    JSON_OBJECT_RESPONSE_FORMAT,
    NER_CATEGORY_KEY,
    NER_ENTITIES_KEY,
    NER_SYSTEM_TEMPLATE,
    NER_TEXT_KEY,
    NER_USER_TEMPLATE,
    TEMPLATES_DIR,
    CrossEncodingMode,
    ProviderKind,
)
from .provider_config import ProviderConfig

T = TypeVar("T")

RETRYABLE_ERRORS = (
    openai.APIConnectionError,
    openai.RateLimitError,
    openai.InternalServerError,
)

_TEMPLATE_ENV = jinja2.Environment(
    loader=jinja2.FileSystemLoader(TEMPLATES_DIR),
    keep_trailing_newline=True,
    undefined=jinja2.StrictUndefined,
)


def render_ner_messages(event_text: str, category_tags: list[str]) -> list[dict[str, str]]:
    """Chat messages of the versioned entity-extraction prompt."""
    context = {"event_text": event_text, "category_tags": category_tags}
    return [
        {"role": "system", "content": _TEMPLATE_ENV.get_template(NER_SYSTEM_TEMPLATE).render()},
        {"role": "user", "content": _TEMPLATE_ENV.get_template(NER_USER_TEMPLATE).render(context)},
    ]


def parse_ner_reply(content: str | None, category_tags: list[str]) -> CategorySnippet:
    """
    Validate a chat reply against ``{"entities": [{"text", "category"}]}``.

    Categories are matched to the given tags case-insensitively.

    Raises:
        MalformedOutputError: If the reply is not valid JSON of that shape.
    """
    if not content:
        raise MalformedOutputError("Empty reply")
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise MalformedOutputError(f"Reply is not JSON: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get(NER_ENTITIES_KEY), list):
        raise MalformedOutputError(f"Reply lacks an '{NER_ENTITIES_KEY}' list")

    tags_by_key = {tag.casefold(): tag for tag in category_tags}
    entities: dict[str, str] = {}
    for item in data[NER_ENTITIES_KEY]:
        if not isinstance(item, dict):
            raise MalformedOutputError(f"Entity {item!r} is not an object")
        text = item.get(NER_TEXT_KEY)
        category = item.get(NER_CATEGORY_KEY)
        if not isinstance(text, str) or not text.strip():
            raise MalformedOutputError(f"Entity {item!r} has no text")
        if not isinstance(category, str) or category.strip().casefold() not in tags_by_key:
            raise MalformedOutputError(f"Entity {item!r} has an unknown category")
        entities.setdefault(" ".join(text.split()), tags_by_key[category.strip().casefold()])
    return CategorySnippet(categories=tuple(category_tags), entities=tuple(entities.items()))


class HttpProvider(AbstractProvider):
    """
    Provider backed by any service speaking the OpenAI wire protocol.

    Args:
        config (ProviderConfig): Provider configuration with ``kind=http``.
        overrides (dict[str, CategorySnippet] | None): Curated snippets per event id.
        logger (logging.Logger | None): Logger for retries and fallbacks.
        client (openai.OpenAI | None): Pre-built client; built from the config when None.
        sleep (Callable[[float], None]): Backoff sleep, replaceable in tests.
    """

    def __init__(
        self,
        config: ProviderConfig,
        overrides: dict[str, CategorySnippet] | None = None,
        logger: logging.Logger | None = None,
        client: Any = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        if config.kind != ProviderKind.http:
            raise ValueError(f"HttpProvider cannot serve provider kind '{config.kind.value}'")
        self._endpoint = config.endpoint.rstrip("/")
        self._sleep = sleep
        super().__init__(config, overrides=overrides, logger=logger)
        if config.rerank_path:
            self.cross_encoding_mode = CrossEncodingMode.scoring_endpoint
        self.client = client if client is not None else self._build_client()

    def _build_client(self) -> openai.OpenAI:
        api_key = os.environ.get(self.config.api_key_env)
        if not api_key:
            raise ProviderError(
                f"Environment variable {self.config.api_key_env} holding the API key is not set."
            )
        return openai.OpenAI(
            base_url=self._endpoint + API_VERSION_PREFIX,
            api_key=api_key,
            timeout=self.config.timeout_s,
            max_retries=0,
        )

    @property
    def provider_id(self) -> str:
        host = httpx.URL(self._endpoint).host or "endpoint"
        return f"{ProviderKind.http.value}_{host}"

    @property
    def embedding_model(self) -> str:
        return self.config.embedding_model

    @property
    def chat_model(self) -> str:
        return self.config.chat_model

    def _with_retries(self, what: str, call: Callable[[], T]) -> T:
        """Run ``call``, retrying transient failures with exponential backoff."""
        delay = self.config.backoff_s
        attempts = self.config.retries + 1
        for attempt in range(1, attempts + 1):
            try:
                return call()
            except RETRYABLE_ERRORS as e:
                if attempt == attempts:
                    raise ProviderError(f"{what} failed after {attempts} attempts: {e}") from e
                self.logger.warning(
                    f"{what} attempt {attempt}/{attempts} failed: {e}; retrying in {delay:.1f}s"
                )
                self._sleep(delay)
                delay *= 2
            except openai.OpenAIError as e:
                raise ProviderError(f"{what} failed: {e}") from e
        raise ProviderError(f"{what} failed")

    def _embed_uncached(self, texts: list[str]) -> list[np.ndarray]:
        response = self._with_retries(
            "Embedding request",
            lambda: self.client.embeddings.create(model=self.embedding_model, input=texts),
        )
        data = sorted(response.data, key=lambda item: getattr(item, "index", 0))
        return [np.asarray(item.embedding, dtype=np.float64) for item in data]

    def _extract_uncached(self, event_text: str, category_tags: list[str]) -> CategorySnippet:
        messages = render_ner_messages(event_text, category_tags)
        attempts = self.config.retries + 1
        last_error: MalformedOutputError | None = None
        for attempt in range(1, attempts + 1):
            response = self._with_retries(
                "Chat completion request",
                lambda: self.client.chat.completions.create(
                    model=self.chat_model,
                    messages=messages,
                    response_format=JSON_OBJECT_RESPONSE_FORMAT,
                    temperature=0,
                ),
            )
            try:
                return parse_ner_reply(response.choices[0].message.content, category_tags)
            except MalformedOutputError as e:
                last_error = e
                self.logger.warning(f"Malformed entity reply (attempt {attempt}/{attempts}): {e}")
        raise MalformedOutputError(f"No usable reply after {attempts} attempts: {last_error}")

    def _score_one_direction(self, query: str, document: str) -> float:
        response = self._with_retries(
            "Scoring request",
            lambda: self.client.post(
                self._endpoint + self.config.rerank_path,
                body={
                    "model": self.config.rerank_model,
                    "query": query,
                    "documents": [document],
                },
                cast_to=httpx.Response,
            ),
        )
        try:
            return float(response.json()["results"][0]["relevance_score"])
        except (ValueError, KeyError, IndexError, TypeError) as e:
            raise ProviderError(f"Unexpected scoring endpoint reply: {e}") from e

    def _score_uncached(self, text_a: str, text_b: str) -> float:
        # rerank endpoints are query/document asymmetric
        return 0.5 * (
            self._score_one_direction(text_a, text_b) + self._score_one_direction(text_b, text_a)
        )

    def manifest(self) -> dict:
        manifest = super().manifest()
        manifest["endpoint"] = self._endpoint
        if self.cross_encoding_mode == CrossEncodingMode.scoring_endpoint:
            manifest["rerank_path"] = self.config.rerank_path
            manifest["rerank_model"] = self.config.rerank_model
        return manifest
