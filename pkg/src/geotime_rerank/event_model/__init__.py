from .calendar_util import day_of_year
from .constant import Segment
from .corpus_parser import (
    Diagnostic,
    ParsedCorpus,
    load_corpus,
    parse_corpus,
    serialize_corpus,
)
from .event_record import Corpus, EventRecord, GeoPoint
from .structured_text import DEFAULT_SEGMENT_VARIANTS, SegmentSpec, build_structured_text

__all__ = [
    "Corpus",
    "DEFAULT_SEGMENT_VARIANTS",
    "Diagnostic",
    "EventRecord",
    "GeoPoint",
    "ParsedCorpus",
    "Segment",
    "SegmentSpec",
    "build_structured_text",
    "day_of_year",
    "load_corpus",
    "parse_corpus",
    "serialize_corpus",
]
