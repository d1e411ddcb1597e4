"""
Deterministic synthetic corpora with planted clusters and distractors.

Every cluster shares a topic vocabulary, a category tag, a geographic disc inside a
latitude band, and a seasonal window; members of a cluster are mutually relevant.
Distractors copy some signals of their cluster and miss others:

- twin: topic text as dense as a member's, near the antipode, out of season, untagged;
- echo: half topic and half filler text, far away, out of season, untagged;
- near miss: sparse topic text at the cluster's place and season, tagged like the cluster,
  yet not relevant to it;
- location-only: filler text inside the disc, out of season, untagged;
- season-only: filler text far away, in season, untagged.

Each spare slot of a cluster takes the next kind of ``SYNTH_DISTRACTOR_PATTERN``.
"""

import datetime
from dataclasses import dataclass, field

import numpy as np

from geotime_rerank.event_model import Corpus, EventRecord, GeoPoint
from geotime_rerank.event_model.constant import DAYS_PER_YEAR
from geotime_rerank.gtr import destination_point, haversine_km
from geotime_rerank.retrieval import tokenize

from .constant import (
    SYNTH_BAND_HALF_WIDTH_DEG,
    SYNTH_CATEGORY_TAGS,
    SYNTH_CENTER_LATITUDE_RANGE,
    SYNTH_DISC_RADIUS_KM,
    SYNTH_DISTRACTOR_PATTERN,
    SYNTH_FAR_MIN_LAT_OFFSET_DEG,
    SYNTH_MIN_CENTER_SEPARATION_KM,
    SYNTH_MIN_CLUSTER_SIZE,
    SYNTH_NEAR_MISS_RADIUS_KM,
    SYNTH_NEAR_MISS_SEASON_DAYS,
    SYNTH_OFF_SEASON_MIN_DAYS,
    SYNTH_PLACE_SUFFIXES,
    SYNTH_SEASON_HALF_WIDTH_DAYS,
    SYNTH_SYLLABLES,
    SYNTH_TWIN_MIN_DISTANCE_KM,
    SYNTH_YEAR_RANGE,
)
from .judgments import Judgments

_TOPIC_VOCAB_SIZE = 8
_FILLER_VOCAB_SIZE = 48
_MAX_ATTEMPTS = 10_000
_CENTER_ATTEMPTS = 1_000
_REFERENCE_YEAR = 2023
_FAR_LATITUDE_RANGE = (-60.0, 70.0)

_MEMBER = "member"
# (title topic, title filler, summary topic, summary filler) word counts
_TEXT_MIX = {
    _MEMBER: (4, 0, 16, 2),
    "twin": (4, 0, 16, 2),
    "echo": (2, 2, 8, 10),
    "near_miss": (1, 3, 4, 14),
    "location": (0, 4, 0, 18),
    "season": (0, 4, 0, 18),
}


@dataclass
class _Cluster:
    tag: str
    place: str
    center: GeoPoint
    season_doy: int
    vocab: list[str]
    members: list[int] = field(default_factory=list)


def _antipode(point: GeoPoint) -> GeoPoint:
    longitude = point.longitude + 180.0 if point.longitude <= 0 else point.longitude - 180.0
    return GeoPoint(-point.latitude, longitude)


class _Generator:
    def __init__(self, seed: int) -> None:
        self.rng = np.random.default_rng(seed)
        self.used_words: set[str] = set()
        self.banned = {
            word for tag in SYNTH_CATEGORY_TAGS for word in tokenize(tag) if len(word) >= 3
        }

    def word(self) -> str:
        for _ in range(_MAX_ATTEMPTS):
            n_syllables = int(self.rng.integers(2, 5))
            syllables = self.rng.choice(len(SYNTH_SYLLABLES), size=n_syllables)
            word = "".join(SYNTH_SYLLABLES[i] for i in syllables)
            if word in self.used_words or any(b in word for b in self.banned):
                continue
            self.used_words.add(word)
            return word
        raise RuntimeError("Synthetic vocabulary exhausted")

    def words(self, n: int) -> list[str]:
        return [self.word() for _ in range(n)]

    def place(self) -> str:
        suffix = SYNTH_PLACE_SUFFIXES[int(self.rng.integers(len(SYNTH_PLACE_SUFFIXES)))]
        return f"{self.word().capitalize()} {suffix}"

    def pick(self, vocab: list[str], n: int) -> list[str]:
        if n == 0:
            return []
        return [vocab[i] for i in self.rng.integers(len(vocab), size=n)]

    def sentence(self, topic: list[str], n_topic: int, filler: list[str], n_filler: int) -> str:
        words = self.pick(topic, n_topic) + self.pick(filler, n_filler)
        text = " ".join(words[i] for i in self.rng.permutation(len(words)))
        return text[:1].upper() + text[1:]

    def text(self, kind: str, topic: list[str], filler: list[str]) -> tuple[str, str]:
        title_topic, title_filler, summary_topic, summary_filler = _TEXT_MIX[kind]
        title = self.sentence(topic, title_topic, filler, title_filler)
        summary = self.sentence(topic, summary_topic, filler, summary_filler) + "."
        return title, summary

    def date(self, doy: int) -> datetime.date:
        doy = (doy - 1) % DAYS_PER_YEAR + 1
        year = int(self.rng.integers(SYNTH_YEAR_RANGE[0], SYNTH_YEAR_RANGE[1] + 1))
        reference = datetime.date(_REFERENCE_YEAR, 1, 1) + datetime.timedelta(days=doy - 1)
        return reference.replace(year=year)

    def in_season(
        self, season_doy: int, half_width: int = SYNTH_SEASON_HALF_WIDTH_DAYS
    ) -> datetime.date:
        offset = int(self.rng.integers(-half_width, half_width + 1))
        return self.date(season_doy + offset)

    def off_season(self, season_doy: int) -> datetime.date:
        offset = int(self.rng.integers(SYNTH_OFF_SEASON_MIN_DAYS, DAYS_PER_YEAR // 2 + 1))
        sign = 1 if self.rng.random() < 0.5 else -1
        return self.date(season_doy + sign * offset)

    def center(self, existing: list[GeoPoint]) -> GeoPoint:
        separation = SYNTH_MIN_CENTER_SEPARATION_KM
        while True:
            for _ in range(_CENTER_ATTEMPTS):
                point = GeoPoint(
                    float(self.rng.uniform(*SYNTH_CENTER_LATITUDE_RANGE)),
                    float(self.rng.uniform(-180.0, 180.0)),
                )
                if all(haversine_km(point, c) >= separation for c in existing):
                    return point
            # crowded sphere: clusters may sit closer than the nominal separation
            separation /= 2

    def in_disc(self, center: GeoPoint, radius_km: float = SYNTH_DISC_RADIUS_KM) -> GeoPoint:
        for _ in range(_MAX_ATTEMPTS):
            distance = radius_km * float(np.sqrt(self.rng.random()))
            point = destination_point(center, float(self.rng.uniform(0.0, 360.0)), distance)
            if abs(point.latitude - center.latitude) < SYNTH_BAND_HALF_WIDTH_DEG:
                return point
        return center

    def far_from(
        self, center: GeoPoint, min_km: float = SYNTH_MIN_CENTER_SEPARATION_KM
    ) -> GeoPoint:
        for _ in range(_MAX_ATTEMPTS):
            point = GeoPoint(
                float(self.rng.uniform(*_FAR_LATITUDE_RANGE)),
                float(self.rng.uniform(-180.0, 180.0)),
            )
            if (
                haversine_km(point, center) >= min_km
                and abs(point.latitude - center.latitude) >= SYNTH_FAR_MIN_LAT_OFFSET_DEG
            ):
                return point
        return _antipode(center)


def synth_corpus(seed: int, n_events: int, n_clusters: int) -> tuple[Corpus, Judgments]:
    """
    Generate a corpus of ``n_events`` events in ``n_clusters`` planted clusters.

    Each cluster first receives up to ``SYNTH_MIN_CLUSTER_SIZE`` members. The remaining
    events are dealt round-robin to the clusters; the i-th spare slot of a cluster becomes
    a distractor of kind ``SYNTH_DISTRACTOR_PATTERN[i]``, or another member once the pattern
    is used up. The same seed always yields the same corpus.

    Returns:
        tuple[Corpus, Judgments]: The corpus and its symmetric intra-cluster judgments.

    Raises:
        ValueError: Unless ``n_events >= n_clusters >= 1``.
    """
    if not n_events >= n_clusters >= 1:
        raise ValueError(f"Need n_events >= n_clusters >= 1, got {n_events}, {n_clusters}")
    gen = _Generator(seed)
    filler = gen.words(_FILLER_VOCAB_SIZE)

    centers: list[GeoPoint] = []
    clusters: list[_Cluster] = []
    for c in range(n_clusters):
        centers.append(gen.center(centers))
        clusters.append(
            _Cluster(
                tag=SYNTH_CATEGORY_TAGS[c % len(SYNTH_CATEGORY_TAGS)],
                place=gen.place(),
                center=centers[-1],
                season_doy=int(gen.rng.integers(1, DAYS_PER_YEAR + 1)),
                vocab=gen.words(_TOPIC_VOCAB_SIZE),
            )
        )

    base_size = max(1, min(SYNTH_MIN_CLUSTER_SIZE, n_events // n_clusters))
    slots = [(c, _MEMBER) for _ in range(base_size) for c in range(n_clusters)]
    for i in range(n_events - len(slots)):
        c, depth = i % n_clusters, i // n_clusters
        kind = SYNTH_DISTRACTOR_PATTERN[depth] if depth < len(SYNTH_DISTRACTOR_PATTERN) else _MEMBER
        slots.append((c, kind))

    drafts: list[dict] = []
    for c, kind in slots:
        cluster = clusters[c]
        title, summary = gen.text(kind, cluster.vocab, filler)
        location_name = gen.place()
        categories: tuple[str, ...] = ()
        if kind == _MEMBER:
            cluster.members.append(len(drafts))
            location_name = cluster.place
            categories = (cluster.tag,)
            point = gen.in_disc(cluster.center)
            date = gen.in_season(cluster.season_doy)
        elif kind == "twin":
            point = gen.far_from(cluster.center, SYNTH_TWIN_MIN_DISTANCE_KM)
            date = gen.off_season(cluster.season_doy)
        elif kind == "echo":
            point = gen.far_from(cluster.center)
            date = gen.off_season(cluster.season_doy)
        elif kind == "near_miss":
            location_name = cluster.place
            categories = (cluster.tag,)
            point = gen.in_disc(cluster.center, SYNTH_NEAR_MISS_RADIUS_KM)
            date = gen.in_season(cluster.season_doy, SYNTH_NEAR_MISS_SEASON_DAYS)
        elif kind == "location":
            point = gen.in_disc(cluster.center)
            date = gen.off_season(cluster.season_doy)
        else:
            point = gen.far_from(cluster.center)
            date = gen.in_season(cluster.season_doy)
        drafts.append(
            {
                "title": title,
                "summary": summary,
                "location_name": location_name,
                "point": point,
                "date": date,
                "categories": categories,
            }
        )

    order = gen.rng.permutation(len(drafts))
    event_ids = {int(draft_index): f"ev{rank:04d}" for rank, draft_index in enumerate(order)}
    related: dict[int, tuple[str, ...]] = {}
    for cluster in clusters:
        for member in cluster.members:
            related[member] = tuple(
                sorted(event_ids[other] for other in cluster.members if other != member)
            )

    events = []
    for draft_index in order:
        draft = drafts[int(draft_index)]
        events.append(
            EventRecord(
                id=event_ids[int(draft_index)],
                title=draft["title"],
                summary=draft["summary"],
                location_name=draft["location_name"],
                latitude=round(draft["point"].latitude, 4),
                longitude=round(draft["point"].longitude, 4),
                date=draft["date"],
                categories=draft["categories"],
                related_ids=related.get(int(draft_index), ()),
            )
        )
    corpus = Corpus(events)
    return corpus, Judgments.from_corpus(corpus)
