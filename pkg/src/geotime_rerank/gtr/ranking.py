from collections.abc import Mapping


def rank_descending(scores: Mapping[str, float]) -> dict[str, int]:
    """
    Rank ids by descending score; the highest score gets rank 1.

    Ties are broken by ascending id, so the result is always a permutation of 1..n.

    Example:
        >>> rank_descending({"a": 3.0, "b": 1.0, "c": 2.0})
        {'a': 1, 'c': 2, 'b': 3}
    """
    ordered = sorted(scores, key=lambda event_id: (-scores[event_id], event_id))
    return {event_id: rank for rank, event_id in enumerate(ordered, start=1)}


def rank_ascending(values: Mapping[str, float]) -> dict[str, int]:
    """
    Rank ids by ascending value; the smallest value gets rank 1, ties by ascending id.
    """
    ordered = sorted(values, key=lambda event_id: (values[event_id], event_id))
    return {event_id: rank for rank, event_id in enumerate(ordered, start=1)}
