from dataclasses import dataclass

from .constant import (
    PREFIX_SEPARATOR,
    PREFIXED_SEGMENT_JOINER,
    RAW_SEGMENT_JOINER,
    Segment,
)
from .event_record import EventRecord


@dataclass(frozen=True)
class SegmentSpec:
    """
    Which content segments form an event's structured text, and whether each is prefixed.

    Attributes:
        segments (tuple[Segment, ...]): Ordered, non-empty, duplicate-free segment list.
        with_prefix (bool): Emit ``<Prefix>: <value>`` lines instead of raw values.
    """

    segments: tuple[Segment, ...] = (
        Segment.title,
        Segment.summary,
        Segment.location,
        Segment.date,
    )
    with_prefix: bool = True

    def __post_init__(self) -> None:
        segments = tuple(Segment(s) for s in self.segments)
        if not segments:
            raise ValueError("SegmentSpec needs at least one segment.")
        if len(set(segments)) != len(segments):
            raise ValueError(f"SegmentSpec has duplicate segments: {[s.value for s in segments]}")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def from_names(cls, names: list[str], with_prefix: bool) -> "SegmentSpec":
        """Build a spec from segment names such as ``["Title", "Summary"]`` (case-insensitive)."""
        lookup = {s.value.lower(): s for s in Segment}
        try:
            segments = tuple(lookup[name.strip().lower()] for name in names)
        except KeyError as e:
            raise ValueError(
                f"Unknown segment {e.args[0]!r}, expected one of {[s.value for s in Segment]}"
            ) from None
        return cls(segments=segments, with_prefix=with_prefix)

    @property
    def label(self) -> str:
        text = ", ".join(s.value for s in self.segments)
        return f"{text} (with prefix)" if self.with_prefix else text

    def to_dict(self) -> dict:
        return {"segments": [s.value for s in self.segments], "with_prefix": self.with_prefix}


def _segment_value(event: EventRecord, segment: Segment) -> str:
    if segment is Segment.title:
        return event.title
    if segment is Segment.summary:
        return event.summary
    if segment is Segment.location:
        return event.location_name
    return event.date.isoformat()


def build_structured_text(event: EventRecord, spec: SegmentSpec) -> str:
    """
    Concatenate the selected segments of an event in spec order.

    With prefixes each segment becomes ``<Prefix>: <value>`` and segments are separated by
    a newline; without prefixes the raw values are joined with a single space. Dates
    render in ISO-8601.
    """
    values = [_segment_value(event, segment) for segment in spec.segments]
    if spec.with_prefix:
        return PREFIXED_SEGMENT_JOINER.join(
            f"{segment.value}{PREFIX_SEPARATOR}{value}"
            for segment, value in zip(spec.segments, values)
        )
    return RAW_SEGMENT_JOINER.join(values)


DEFAULT_SEGMENT_VARIANTS = (
    SegmentSpec((Segment.title, Segment.summary), with_prefix=False),
    SegmentSpec((Segment.title, Segment.summary, Segment.location), with_prefix=False),
    SegmentSpec(
        (Segment.title, Segment.summary, Segment.location, Segment.date), with_prefix=False
    ),
    SegmentSpec(
        (Segment.title, Segment.summary, Segment.location, Segment.date), with_prefix=True
    ),
)
"""tuple[SegmentSpec, ...]: Input variants compared by the segment-comparison experiment."""
