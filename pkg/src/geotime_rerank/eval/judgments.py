import logging
from collections.abc import Iterator, Mapping
from pathlib import Path
from types import MappingProxyType

import json_lines

from geotime_rerank.event_model import Corpus

from .constant import QUERY_ID_KEY, RELEVANT_IDS_KEY


class Judgments(Mapping[str, frozenset[str]]):
    """
    Ground truth: query id -> set of relevant event ids.

    No query is ever relevant to itself. Queries may map to an empty set; evaluation
    skips them and counts them.

    Attributes:
        symmetric (bool): Whether every link was mirrored.
        source (str): Where the judgments came from (``corpus`` or a file path).
    """

    def __init__(
        self,
        relevant: Mapping[str, set[str] | frozenset[str] | list[str]],
        symmetric: bool = False,
        source: str = "corpus",
    ) -> None:
        data = {
            str(query_id): frozenset(str(e) for e in ids if str(e) != str(query_id))
            for query_id, ids in relevant.items()
        }
        if symmetric:
            mirrored = {query_id: set(ids) for query_id, ids in data.items()}
            for query_id, ids in data.items():
                for event_id in ids:
                    mirrored.setdefault(event_id, set()).add(query_id)
            data = {query_id: frozenset(ids) for query_id, ids in mirrored.items()}
        self._relevant = MappingProxyType(dict(sorted(data.items())))
        self.symmetric = symmetric
        self.source = source

    @classmethod
    def from_corpus(
        cls,
        corpus: Corpus,
        symmetric: bool = False,
        logger: logging.Logger | None = None,
    ) -> "Judgments":
        """
        Judgments from the corpus' ``related_ids``; dangling links are dropped.
        """
        relevant: dict[str, set[str]] = {}
        dropped = 0
        for event in corpus:
            kept = {event_id for event_id in event.related_ids if event_id in corpus}
            dropped += len(set(event.related_ids) - kept)
            relevant[event.id] = kept
        if dropped and logger is not None:
            logger.warning(f"Dropped {dropped} related ids that are not in the corpus")
        return cls(relevant, symmetric=symmetric, source="corpus")

    def __getitem__(self, query_id: str) -> frozenset[str]:
        return self._relevant[query_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._relevant)

    def __len__(self) -> int:
        return len(self._relevant)

    @property
    def evaluable_ids(self) -> list[str]:
        """Query ids with a non-empty relevant set, sorted."""
        return [query_id for query_id, ids in self._relevant.items() if ids]

    def restricted_to(self, corpus: Corpus) -> "Judgments":
        """Copy keeping only queries and relevant ids present in ``corpus``."""
        data = {
            query_id: {event_id for event_id in ids if event_id in corpus}
            for query_id, ids in self._relevant.items()
            if query_id in corpus
        }
        restricted = Judgments(data, symmetric=False, source=self.source)
        restricted.symmetric = self.symmetric
        return restricted

    def manifest(self) -> dict:
        return {
            "source": self.source,
            "symmetric": self.symmetric,
            "queries": len(self),
            "evaluable_queries": len(self.evaluable_ids),
        }


def load_judgments(
    path: Path,
    corpus: Corpus | None = None,
    symmetric: bool = False,
    logger: logging.Logger | None = None,
) -> Judgments:
    """
    Load judgments from JSONL records ``{"query_id": ..., "relevant_ids": [...]}``.

    With a corpus, unknown query ids and relevant ids are dropped with a warning.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValueError: If a record lacks the required keys.
    """
    path = Path(path).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Judgments file {path} not found.")
    relevant: dict[str, set[str]] = {}
    with open(path, "rb") as f:
        for line_no, record in enumerate(json_lines.reader(f), start=1):
            if not isinstance(record, dict) or QUERY_ID_KEY not in record:
                raise ValueError(f"{path}:{line_no}: record needs '{QUERY_ID_KEY}'")
            ids = record.get(RELEVANT_IDS_KEY, [])
            if not isinstance(ids, list):
                raise ValueError(f"{path}:{line_no}: '{RELEVANT_IDS_KEY}' must be a list")
            relevant.setdefault(str(record[QUERY_ID_KEY]), set()).update(str(i) for i in ids)
    judgments = Judgments(relevant, symmetric=symmetric, source=str(path))
    if corpus is None:
        return judgments
    restricted = judgments.restricted_to(corpus)
    if logger is not None and len(restricted) != len(judgments):
        logger.warning(
            f"Ignored {len(judgments) - len(restricted)} judged queries missing from the corpus"
        )
    return restricted
