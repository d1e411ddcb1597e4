from dataclasses import dataclass
from typing import Optional

from .constant import ProviderKind


@dataclass
class ProviderConfig:
    """
    Configuration of the model provider behind embedding, cross-scoring and entity extraction.

    Attributes:
        kind (ProviderKind): ``mock`` (offline, deterministic) or ``http`` (OpenAI-compatible).
        endpoint (str): Base URL of the HTTP service, without the ``/v1`` suffix (http only).
        embedding_model (str): Model name sent to ``/v1/embeddings``.
        chat_model (str): Model name sent to ``/v1/chat/completions`` for entity extraction.
        rerank_path (str): Optional scoring endpoint path (e.g. ``/v1/rerank``) used to
            cross-score category snippets; empty means cosine over embeddings.
        rerank_model (str): Model name sent to the scoring endpoint.
        api_key_env (str): Name of the environment variable holding the API key.
        dimension (int): Declared embedding dimension; 0 lets the first reply fix it.
        batch_size (int): Texts per embedding request.
        timeout_s (float): Per-request timeout in seconds.
        retries (int): Retries after a failed request or a malformed chat reply.
        backoff_s (float): First retry delay in seconds, doubled after every retry.
        max_concurrency (int): Concurrent embedding requests.
        cache_dir (Optional[str]): Directory of the JSONL result cache; None keeps it in memory.
        overrides_path (Optional[str]): YAML/JSON entity-override file (human curation).
    """

    kind: ProviderKind = ProviderKind.mock
    endpoint: str = ""
    embedding_model: str = "text-embedding-ada-002"
    chat_model: str = "gpt-4-turbo"
    rerank_path: str = ""
    rerank_model: str = ""
    api_key_env: str = "OPENAI_API_KEY"
    dimension: int = 0
    batch_size: int = 64
    timeout_s: float = 60.0
    retries: int = 3
    backoff_s: float = 1.0
    max_concurrency: int = 4
    cache_dir: Optional[str] = None
    overrides_path: Optional[str] = None

    def __post_init__(self) -> None:
        self.kind = ProviderKind(self.kind)
        if self.kind == ProviderKind.http:
            if not self.endpoint:
                raise ValueError("http provider requires an endpoint.")
            if not self.api_key_env:
                raise ValueError("http provider requires api_key_env.")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.retries < 0:
            raise ValueError(f"retries must be >= 0, got {self.retries}")
        if self.max_concurrency < 1:
            raise ValueError(f"max_concurrency must be >= 1, got {self.max_concurrency}")
        if self.dimension < 0:
            raise ValueError(f"dimension must be >= 0, got {self.dimension}")
