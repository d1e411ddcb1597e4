"""
Constants for the model provider boundary.
"""

from enum import Enum
from pathlib import Path


class ProviderKind(str, Enum):
    """
    Supported provider implementations.

    Attributes:
        mock: Deterministic offline feature-hashing provider.
        http: OpenAI-compatible HTTP provider.
    """

    mock = "mock"
    http = "http"


PROVIDER_FACTORY_CONFIG_FILE = Path(__file__).parent / "configs" / "provider_factory_config.yaml"
"""Path: YAML mapping provider kind -> implementing module and class."""

TEMPLATES_DIR = Path(__file__).parent / "templates"
"""Path: Directory holding the versioned NER prompt templates."""

NER_PROMPT_VERSION = "v1"
"""str: Version of the entity-extraction prompt; part of every snippet cache key."""

NER_SYSTEM_TEMPLATE = f"ner_system_{NER_PROMPT_VERSION}.j2"
NER_USER_TEMPLATE = f"ner_user_{NER_PROMPT_VERSION}.j2"


# mock provider
MOCK_DIMENSION = 256
"""int: Dimension of feature-hashing mock vectors."""

MOCK_HASH_SEED = 0x9E3779B97F4A7C15
"""int: Fixed 64-bit key for hashing mock features into buckets."""

MOCK_EMBEDDING_MODEL = "feature-hash-256"
MOCK_CHAT_MODEL = "mock-ner"

MOCK_TRIGRAM_SIZE = 3
MOCK_MIN_TAG_WORD_LEN = 3
"""int: Shortest category-tag word the mock NER looks for inside tokens."""


# http wire protocol
API_VERSION_PREFIX = "/v1"
JSON_OBJECT_RESPONSE_FORMAT = {"type": "json_object"}

NER_ENTITIES_KEY = "entities"
NER_TEXT_KEY = "text"
NER_CATEGORY_KEY = "category"


# cache
CACHE_DIGEST_KEY = "digest"
CACHE_DIM_KEY = "dim"
CACHE_VALUES_KEY = "values"
CACHE_SNIPPET_KEY = "snippet"
CACHE_SCORE_KEY = "score"

EMBEDDINGS_CACHE_SUFFIX = ".embeddings.jsonl"
SNIPPETS_CACHE_SUFFIX = ".snippets.jsonl"
SCORES_CACHE_SUFFIX = ".scores.jsonl"


class CrossEncodingMode(str, Enum):
    """
    How category snippets were scored; recorded in every run manifest.
    """

    cosine_over_embeddings = "cosine_over_embeddings"
    scoring_endpoint = "scoring_endpoint"


SNIPPET_CATEGORY_PREFIX = "Category: "
SNIPPET_ENTITIES_PREFIX = "; Entities: "
SNIPPET_JOINER = " "

PROVIDER_LOGGER_NAME = "PROVIDERS"
