import re

from .constant import TOKEN_PATTERN

_TOKEN_RE = re.compile(TOKEN_PATTERN)


def tokenize(text: str) -> list[str]:
    """
    Lowercase ``text`` and split it on every non-alphanumeric character.

    No stemming and no stop-word removal; BM25 and the mock embedder share this tokenizer.

    Example:
        >>> tokenize("Dead Humpback Whale (Megaptera novaeangliae)")
        ['dead', 'humpback', 'whale', 'megaptera', 'novaeangliae']
    """
    return _TOKEN_RE.findall(text.lower())
