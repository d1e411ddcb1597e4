"""
Field names, segment prefixes and diagnostic kinds for the event corpus.
"""

from enum import Enum

# EventRecord JSON keys
ID_KEY = "id"
TITLE_KEY = "title"
SUMMARY_KEY = "summary"
LOCATION_NAME_KEY = "location_name"
LATITUDE_KEY = "latitude"
LONGITUDE_KEY = "longitude"
DATE_KEY = "date"
CATEGORIES_KEY = "categories"
RELATED_IDS_KEY = "related_ids"

EVENT_RECORD_KEYS = [
    ID_KEY,
    TITLE_KEY,
    SUMMARY_KEY,
    LOCATION_NAME_KEY,
    LATITUDE_KEY,
    LONGITUDE_KEY,
    DATE_KEY,
    CATEGORIES_KEY,
    RELATED_IDS_KEY,
]
"""list[str]: Serialization order of EventRecord fields."""

REQUIRED_KEYS = [ID_KEY, TITLE_KEY, LATITUDE_KEY, LONGITUDE_KEY, DATE_KEY]
"""list[str]: Keys that must be present on every corpus line; the others default to empty."""

MIN_LATITUDE = -90.0
MAX_LATITUDE = 90.0
MIN_LONGITUDE = -180.0
MAX_LONGITUDE = 180.0

DAYS_PER_YEAR = 365
"""int: Length of the seasonal wheel; leap days are collapsed onto it."""


class Segment(str, Enum):
    """
    Content segments that can be picked into the structured text of an event.
    The value doubles as the prefix written before the segment.
    """

    title = "Title"
    summary = "Summary"
    location = "Location"
    date = "Date"


PREFIX_SEPARATOR = ": "
PREFIXED_SEGMENT_JOINER = "\n"
RAW_SEGMENT_JOINER = " "


class DiagnosticKind(str, Enum):
    """
    Kinds of problems reported while parsing a corpus.
    """

    invalid_encoding = "invalid_encoding"
    malformed_json = "malformed_json"
    not_an_object = "not_an_object"
    missing_field = "missing_field"
    invalid_field = "invalid_field"
    duplicate_id = "duplicate_id"
    coordinate_out_of_range = "coordinate_out_of_range"
    invalid_date = "invalid_date"
    dangling_related_id = "dangling_related_id"
    self_related_id = "self_related_id"
    empty_corpus = "empty_corpus"


WARNING_KINDS = {
    DiagnosticKind.dangling_related_id,
    DiagnosticKind.self_related_id,
    DiagnosticKind.empty_corpus,
}
"""set[DiagnosticKind]: Diagnostic kinds that do not make a corpus invalid."""
