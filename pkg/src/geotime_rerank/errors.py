"""
Exception hierarchy shared by every geotime_rerank module.

The CLI maps these onto process exit codes: data errors exit with 2 and
provider errors exit with 3.
"""


class GeoTimeRerankError(Exception):
    """Base class for all errors raised by geotime_rerank."""


class CorpusValidationError(GeoTimeRerankError):
    """
    Raised when a corpus contains hard validation errors.

    Attributes:
        diagnostics (list[dict]): One ``{line, id?, kind, message}`` record per problem.
    """

    def __init__(self, message: str, diagnostics: list[dict] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or []


class UnknownEventError(GeoTimeRerankError, KeyError):
    """Raised when an event id is not present in the corpus."""

    def __init__(self, event_id: str) -> None:
        super().__init__(f"Unknown event id: {event_id}")
        self.event_id = event_id

    def __str__(self) -> str:
        return self.args[0]


class ProviderError(GeoTimeRerankError):
    """Raised when a model provider fails after all retries or returns unusable output."""


class EvaluationError(GeoTimeRerankError):
    """Raised when an evaluation has no judgments or no evaluable query."""


class MalformedOutputError(ProviderError):
    """Raised when a chat model keeps returning output that does not match the requested schema."""
