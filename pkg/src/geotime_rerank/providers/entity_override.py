"""
Human-in-the-loop entity overrides: curated snippets that replace model output per event.
"""

import logging
from pathlib import Path

import yaml

from geotime_rerank.event_model import Corpus

from .category_snippet import CategorySnippet


def load_entity_overrides(
    overrides_path: Path,
    corpus: Corpus | None = None,
    logger: logging.Logger | None = None,
) -> dict[str, CategorySnippet]:
    """
    Load an override file mapping event id -> ``{categories, entities}``.

    Args:
        overrides_path (Path): YAML (or JSON) override file.
        corpus (Corpus | None): When given, ids missing from the corpus are logged and skipped.
        logger (logging.Logger | None): Logger for unresolved ids.

    Returns:
        dict[str, CategorySnippet]: Override snippet per event id.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValueError: If the file is not a mapping or an entry is malformed.
    """
    overrides_path = Path(overrides_path).expanduser()
    if not overrides_path.exists():
        raise FileNotFoundError(f"Entity override file {overrides_path} not found.")
    try:
        with open(overrides_path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ValueError(f"Error parsing entity override file {overrides_path}") from e
    if not isinstance(data, dict):
        raise ValueError(f"Entity override file {overrides_path} must hold a mapping.")

    overrides: dict[str, CategorySnippet] = {}
    for event_id, entry in data.items():
        event_id = str(event_id)
        if corpus is not None and event_id not in corpus:
            if logger is not None:
                logger.warning(f"Entity override for unknown event id '{event_id}' ignored")
            continue
        try:
            overrides[event_id] = CategorySnippet.from_dict(entry or {})
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"Invalid entity override for '{event_id}': {e}") from e
    return overrides
