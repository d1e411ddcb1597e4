"""
Dense (bi-encoder) index: one provider embedding per corpus event.
"""

import json
from pathlib import Path
from typing import TYPE_CHECKING

import json_lines
import numpy as np

from geotime_rerank.event_model import Corpus, EventRecord, SegmentSpec, build_structured_text

from .constant import (
    DENSE_INDEX_MANIFEST_FILE,
    DENSE_INDEX_VECTORS_FILE,
    INDEX_ID_KEY,
    INDEX_VALUES_KEY,
)
from .scored_candidate import RetrievalResult, top_candidates
from .similarity import cosine_scores

if TYPE_CHECKING:
    from geotime_rerank.providers import AbstractProvider


class DenseIndex:
    """
    Event id -> embedding of its structured text under one SegmentSpec and provider.

    Attributes:
        ids (tuple[str, ...]): Event ids in corpus order.
        matrix (np.ndarray): Read-only ``(N_z, dimension)`` array, row i belongs to ids[i].
        spec (SegmentSpec): Spec the structured texts were built with.
        provider_manifest (dict): Manifest of the provider that produced the vectors.
    """

    def __init__(
        self,
        ids: list[str],
        matrix: np.ndarray,
        spec: SegmentSpec,
        provider_manifest: dict | None = None,
    ) -> None:
        matrix = np.asarray(matrix, dtype=np.float64)
        if len(ids) == 0:
            matrix = matrix.reshape(0, matrix.shape[-1] if matrix.ndim == 2 else 0)
        if matrix.ndim != 2 or matrix.shape[0] != len(ids):
            raise ValueError(f"Expected {len(ids)} vectors, got array of shape {matrix.shape}")
        matrix.flags.writeable = False
        self.ids = tuple(ids)
        self.matrix = matrix
        self.spec = spec
        self.provider_manifest = dict(provider_manifest or {})
        self._row = {event_id: i for i, event_id in enumerate(self.ids)}

    @classmethod
    def build(cls, corpus: Corpus, spec: SegmentSpec, provider: "AbstractProvider") -> "DenseIndex":
        """Embed every event's structured text with ``provider``."""
        if corpus.n_z == 0:
            return cls([], np.zeros((0, 0)), spec, provider.manifest())
        texts = [build_structured_text(event, spec) for event in corpus]
        vectors = provider.embed_batch(texts)
        return cls(corpus.ids, np.vstack(vectors), spec, provider.manifest())

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[1])

    def vector(self, event_id: str) -> np.ndarray:
        return self.matrix[self._row[event_id]]

    def save(self, directory: Path) -> None:
        """Write the vectors as JSONL records plus a manifest with provider and spec."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / DENSE_INDEX_VECTORS_FILE, "w", encoding="utf-8") as f:
            for event_id, row in zip(self.ids, self.matrix):
                f.write(json.dumps({INDEX_ID_KEY: event_id, INDEX_VALUES_KEY: row.tolist()}) + "\n")
        manifest = {
            "provider": self.provider_manifest,
            "segment_spec": self.spec.to_dict(),
            "n_z": len(self.ids),
            "dimension": self.dimension,
        }
        with open(directory / DENSE_INDEX_MANIFEST_FILE, "w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)

    @classmethod
    def load(cls, directory: Path) -> "DenseIndex":
        directory = Path(directory)
        manifest_file = directory / DENSE_INDEX_MANIFEST_FILE
        vectors_file = directory / DENSE_INDEX_VECTORS_FILE
        if not manifest_file.exists() or not vectors_file.exists():
            raise FileNotFoundError(f"No dense index found in {directory}")
        with open(manifest_file, encoding="utf-8") as f:
            manifest = json.load(f)
        spec_data = manifest["segment_spec"]
        spec = SegmentSpec.from_names(spec_data["segments"], spec_data["with_prefix"])
        ids: list[str] = []
        rows: list[list[float]] = []
        with open(vectors_file, "rb") as f:
            for record in json_lines.reader(f):
                ids.append(record[INDEX_ID_KEY])
                rows.append(record[INDEX_VALUES_KEY])
        if rows:
            matrix = np.asarray(rows, dtype=np.float64)
        else:
            matrix = np.zeros((0, manifest["dimension"]))
        return cls(ids, matrix, spec, manifest["provider"])

    def __len__(self) -> int:
        return len(self.ids)


def dense_retrieve(
    query: EventRecord,
    index: DenseIndex,
    spec: SegmentSpec,
    n_retrieve: int,
    provider: "AbstractProvider",
) -> RetrievalResult:
    """
    Stage-1 dense retrieval: cosine between the query embedding and every corpus vector.

    The query event never appears among its own candidates. The result is sorted by
    (score desc, id asc) and holds at most ``n_retrieve`` candidates; its ``raw_ranks``
    are the raw semantic ranking of the retrieved set.

    Raises:
        ValueError: If ``index`` was built with a different spec.
    """
    if index.spec != spec:
        raise ValueError(f"Index was built with '{index.spec.label}', not '{spec.label}'")
    if len(index) == 0:
        return RetrievalResult()
    query_vector = provider.embed(build_structured_text(query, spec))
    scores = cosine_scores(query_vector, index.matrix)
    return top_candidates(list(index.ids), scores.tolist(), n_retrieve, exclude_id=query.id)
