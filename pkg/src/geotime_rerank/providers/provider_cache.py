import hashlib
import json
import re
import threading
from pathlib import Path

import json_lines
import numpy as np

from .category_snippet import CategorySnippet
from .constant import (
    CACHE_DIGEST_KEY,
    CACHE_DIM_KEY,
    CACHE_SCORE_KEY,
    CACHE_SNIPPET_KEY,
    CACHE_VALUES_KEY,
    EMBEDDINGS_CACHE_SUFFIX,
    SCORES_CACHE_SUFFIX,
    SNIPPETS_CACHE_SUFFIX,
)


def content_digest(text: str) -> str:
    """SHA-256 hex digest of a text, the content address used by every cache record."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_") or "default"


def _read_records(path: Path) -> list[dict]:
    if not path.exists():
        return []
    with open(path, "rb") as f:
        return list(json_lines.reader(f, broken=True))


class ProviderCache:
    """
    Content-addressed result cache, one JSONL file per (provider id, model).

    Records are loaded once at construction and appended as new results arrive.
    All writes go through one lock, so concurrent embedding batches never interleave
    partial lines. With ``cache_dir=None`` the cache lives in memory only.
    """

    def __init__(
        self,
        cache_dir: Path | None,
        provider_id: str,
        embedding_model: str,
        chat_model: str,
    ) -> None:
        self.cache_dir = Path(cache_dir).expanduser() if cache_dir else None
        self._lock = threading.Lock()
        self._embeddings: dict[str, np.ndarray] = {}
        self._snippets: dict[str, CategorySnippet] = {}
        self._scores: dict[str, float] = {}

        self.embeddings_file: Path | None = None
        self.snippets_file: Path | None = None
        self.scores_file: Path | None = None
        if self.cache_dir is None:
            return

        self.cache_dir.mkdir(parents=True, exist_ok=True)
        embedding_stem = f"{_safe_name(provider_id)}__{_safe_name(embedding_model)}"
        chat_stem = f"{_safe_name(provider_id)}__{_safe_name(chat_model)}"
        self.embeddings_file = self.cache_dir / f"{embedding_stem}{EMBEDDINGS_CACHE_SUFFIX}"
        self.snippets_file = self.cache_dir / f"{chat_stem}{SNIPPETS_CACHE_SUFFIX}"
        self.scores_file = self.cache_dir / f"{embedding_stem}{SCORES_CACHE_SUFFIX}"

        for record in _read_records(self.embeddings_file):
            values = np.asarray(record[CACHE_VALUES_KEY], dtype=np.float64)
            if values.shape != (record[CACHE_DIM_KEY],):
                continue
            values.flags.writeable = False
            self._embeddings[record[CACHE_DIGEST_KEY]] = values
        for record in _read_records(self.snippets_file):
            self._snippets[record[CACHE_DIGEST_KEY]] = CategorySnippet.from_dict(
                record[CACHE_SNIPPET_KEY]
            )
        for record in _read_records(self.scores_file):
            self._scores[record[CACHE_DIGEST_KEY]] = float(record[CACHE_SCORE_KEY])

    def _append(self, path: Path | None, record: dict) -> None:
        if path is None:
            return
        with open(path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")

    def get_embedding(self, digest: str) -> np.ndarray | None:
        return self._embeddings.get(digest)

    def put_embedding(self, digest: str, values: np.ndarray) -> np.ndarray:
        values = np.array(values, dtype=np.float64)
        values.flags.writeable = False
        with self._lock:
            if digest in self._embeddings:
                return self._embeddings[digest]
            self._embeddings[digest] = values
            self._append(
                self.embeddings_file,
                {
                    CACHE_DIGEST_KEY: digest,
                    CACHE_DIM_KEY: int(values.shape[0]),
                    CACHE_VALUES_KEY: values.tolist(),
                },
            )
        return values

    def get_snippet(self, digest: str) -> CategorySnippet | None:
        return self._snippets.get(digest)

    def put_snippet(self, digest: str, snippet: CategorySnippet) -> None:
        with self._lock:
            if digest in self._snippets:
                return
            self._snippets[digest] = snippet
            self._append(
                self.snippets_file, {CACHE_DIGEST_KEY: digest, CACHE_SNIPPET_KEY: snippet.to_dict()}
            )

    def get_score(self, digest: str) -> float | None:
        return self._scores.get(digest)

    def put_score(self, digest: str, score: float) -> None:
        with self._lock:
            if digest in self._scores:
                return
            self._scores[digest] = score
            self._append(self.scores_file, {CACHE_DIGEST_KEY: digest, CACHE_SCORE_KEY: score})

    def __len__(self) -> int:
        return len(self._embeddings)
