import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ScoredCandidate:
    """A stage-1 candidate and its retrieval score."""

    id: str
    score: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.score):
            raise ValueError(f"Candidate {self.id} has a non-finite score {self.score}")

    def to_dict(self) -> dict:
        return {"id": self.id, "score": self.score}


@dataclass(frozen=True)
class RetrievalResult:
    """
    Ordered stage-1 candidate set Z_retrieve.

    Attributes:
        candidates (tuple[ScoredCandidate, ...]): Sorted by (score desc, id asc).
    """

    candidates: tuple[ScoredCandidate, ...] = ()

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.candidates]

    @property
    def scores(self) -> dict[str, float]:
        return {c.id: c.score for c in self.candidates}

    @property
    def raw_ranks(self) -> dict[str, int]:
        """Descending rank of every candidate, 1..len(candidates)."""
        return {c.id: rank for rank, c in enumerate(self.candidates, start=1)}

    def __len__(self) -> int:
        return len(self.candidates)


def top_candidates(
    ids: list[str], scores: list[float], k: int, exclude_id: str | None = None
) -> RetrievalResult:
    """Keep the ``k`` best (score desc, id asc) candidates, skipping ``exclude_id``."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    kept = [
        (float(score), event_id)
        for event_id, score in zip(ids, scores)
        if event_id != exclude_id
    ]
    ranked = sorted(kept, key=lambda pair: (-pair[0], pair[1]))
    return RetrievalResult(
        tuple(ScoredCandidate(event_id, score) for score, event_id in ranked[:k])
    )
