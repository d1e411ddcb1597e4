from .abstract_provider import AbstractProvider, ProviderStats, ner_input_text
from .category_snippet import CategorySnippet
from .constant import CrossEncodingMode, ProviderKind
from .entity_override import load_entity_overrides
from .http_provider import HttpProvider
from .mock_provider import MockProvider, mock_embed, mock_extract_entities
from .provider_cache import ProviderCache, content_digest
from .provider_config import ProviderConfig
from .provider_factory import ProviderFactory, create_provider

__all__ = [
    "AbstractProvider",
    "CategorySnippet",
    "CrossEncodingMode",
    "HttpProvider",
    "MockProvider",
    "ProviderCache",
    "ProviderConfig",
    "ProviderFactory",
    "ProviderKind",
    "ProviderStats",
    "content_digest",
    "create_provider",
    "load_entity_overrides",
    "mock_embed",
    "mock_extract_entities",
    "ner_input_text",
]
