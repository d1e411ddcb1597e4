from dataclasses import dataclass, field

from .constant import (
    NER_CATEGORY_KEY,
    NER_TEXT_KEY,
    SNIPPET_CATEGORY_PREFIX,
    SNIPPET_ENTITIES_PREFIX,
    SNIPPET_JOINER,
)


@dataclass(frozen=True)
class CategorySnippet:
    """
    Category tags of an event fused with the entities extracted under each tag.

    Attributes:
        categories (tuple[str, ...]): Category tags in corpus order.
        entities (tuple[tuple[str, str], ...]): ``(entity text, category tag)`` pairs.
    """

    categories: tuple[str, ...] = field(default_factory=tuple)
    entities: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "entities", tuple((str(t), str(c)) for t, c in self.entities))
        unknown = {c for _, c in self.entities if c not in self.categories}
        if unknown:
            raise ValueError(f"Entity categories {sorted(unknown)} are not in {self.categories}")

    @property
    def rendered(self) -> str:
        """Canonical text: ``Category: <tag>; Entities: <e1>, <e2>.`` per tag, space-joined."""
        parts = []
        for tag in self.categories:
            names = list(dict.fromkeys(text for text, cat in self.entities if cat == tag))
            if names:
                parts.append(
                    f"{SNIPPET_CATEGORY_PREFIX}{tag}{SNIPPET_ENTITIES_PREFIX}{', '.join(names)}."
                )
            else:
                parts.append(f"{SNIPPET_CATEGORY_PREFIX}{tag}.")
        return SNIPPET_JOINER.join(parts)

    @classmethod
    def categories_only(cls, categories: list[str] | tuple[str, ...]) -> "CategorySnippet":
        return cls(categories=tuple(categories))

    def to_dict(self) -> dict:
        return {
            "categories": list(self.categories),
            "entities": [{NER_TEXT_KEY: t, NER_CATEGORY_KEY: c} for t, c in self.entities],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CategorySnippet":
        entities = tuple(
            (item[NER_TEXT_KEY], item[NER_CATEGORY_KEY]) for item in data.get("entities", [])
        )
        return cls(categories=tuple(data.get("categories", [])), entities=entities)
