import datetime
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from types import MappingProxyType

from geotime_rerank.errors import UnknownEventError

from .constant import (
    CATEGORIES_KEY,
    DATE_KEY,
    ID_KEY,
    LATITUDE_KEY,
    LOCATION_NAME_KEY,
    LONGITUDE_KEY,
    MAX_LATITUDE,
    MAX_LONGITUDE,
    MIN_LATITUDE,
    MIN_LONGITUDE,
    RELATED_IDS_KEY,
    SUMMARY_KEY,
    TITLE_KEY,
)


def check_coordinates(latitude: float, longitude: float) -> None:
    """
    Raise ValueError unless both coordinates are finite and within bounds.
    """
    if not (math.isfinite(latitude) and MIN_LATITUDE <= latitude <= MAX_LATITUDE):
        raise ValueError(f"latitude {latitude} out of range [{MIN_LATITUDE}, {MAX_LATITUDE}]")
    if not (math.isfinite(longitude) and MIN_LONGITUDE <= longitude <= MAX_LONGITUDE):
        raise ValueError(
            f"longitude {longitude} out of range [{MIN_LONGITUDE}, {MAX_LONGITUDE}]"
        )


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees."""

    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        check_coordinates(self.latitude, self.longitude)


@dataclass(frozen=True)
class EventRecord:
    """
    One corpus event.

    Attributes:
        id (str): Opaque identifier, unique within a corpus.
        title (str): Non-empty headline.
        summary (str): Free text, may be empty.
        location_name (str): Human-readable place name.
        latitude (float): Degrees in [-90, 90].
        longitude (float): Degrees in [-180, 180].
        date (datetime.date): Calendar date of the event.
        categories (tuple[str, ...]): Expert-assigned category tags.
        related_ids (tuple[str, ...]): Ground-truth "see also" links.
    """

    id: str
    title: str
    summary: str
    location_name: str
    latitude: float
    longitude: float
    date: datetime.date
    categories: tuple[str, ...] = field(default_factory=tuple)
    related_ids: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("Event id must be non-empty.")
        if not self.title.strip():
            raise ValueError(f"Event {self.id} has an empty title.")
        check_coordinates(self.latitude, self.longitude)

    @property
    def point(self) -> GeoPoint:
        return GeoPoint(self.latitude, self.longitude)

    def to_dict(self) -> dict:
        return {
            ID_KEY: self.id,
            TITLE_KEY: self.title,
            SUMMARY_KEY: self.summary,
            LOCATION_NAME_KEY: self.location_name,
            LATITUDE_KEY: self.latitude,
            LONGITUDE_KEY: self.longitude,
            DATE_KEY: self.date.isoformat(),
            CATEGORIES_KEY: list(self.categories),
            RELATED_IDS_KEY: list(self.related_ids),
        }


class Corpus:
    """
    Ordered, immutable collection of events with a total id lookup.

    The corpus is never mutated after construction, so it can be shared between
    worker threads.
    """

    def __init__(self, events: list[EventRecord] | tuple[EventRecord, ...] = ()) -> None:
        self._events = tuple(events)
        by_id: dict[str, EventRecord] = {}
        for event in self._events:
            if event.id in by_id:
                raise ValueError(f"Duplicate event id: {event.id}")
            by_id[event.id] = event
        self._by_id = MappingProxyType(by_id)

    @property
    def events(self) -> tuple[EventRecord, ...]:
        return self._events

    @property
    def n_z(self) -> int:
        """Number of events in the corpus."""
        return len(self._events)

    @property
    def ids(self) -> list[str]:
        return [event.id for event in self._events]

    def get(self, event_id: str) -> EventRecord:
        """
        Look up an event by id.

        Raises:
            UnknownEventError: If the id is not in the corpus.
        """
        try:
            return self._by_id[event_id]
        except KeyError:
            raise UnknownEventError(event_id) from None

    def __contains__(self, event_id: object) -> bool:
        return event_id in self._by_id

    def __iter__(self) -> Iterator[EventRecord]:
        return iter(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Corpus) and self._events == other._events

    def __hash__(self) -> int:
        return hash(self._events)
