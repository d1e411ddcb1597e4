import datetime
import json

import pytest

from geotime_rerank.eval import synth_corpus
from geotime_rerank.event_model import Corpus, EventRecord, SegmentSpec
from geotime_rerank.gtr import ALL_FEATURES, GtrParams, GtrReranker
from geotime_rerank.providers import MockProvider, ProviderConfig

WHALE_TAGS = ("Marine Mammals", "Death / Die-off / Decline")
KODIAK_QUERY_ID = "q-kodiak"
KODIAK_HITS = ("w01", "w03", "w05")

# id, title, location, latitude, longitude, date
_WHALE_ROWS = [
    (
        KODIAK_QUERY_ID,
        "Humpback found dead near Kodiak gets Alaska's first 2023 whale necropsy",
        "Kodiak, Alaska, United States",
        57.79,
        -152.407,
        "2023-10-02",
    ),
    (
        "w01",
        "Alaska's third dead gray whale of the year reported on Kodiak coast",
        "Kodiak, Alaska, United States",
        57.79,
        -152.407,
        "2019-05-23",
    ),
    (
        "w02",
        "Dead Humpback Whale (Megaptera novaeangliae)",
        "Old Harbor, Alaska, United States",
        57.203,
        -153.304,
        "2012-08-23",
    ),
    (
        "w03",
        "Sitka team conducts first humpback whale necropsy in 5 years",
        "Sitka, Alaska, United States",
        57.053,
        -135.33,
        "2021-03-23",
    ),
    (
        "w04",
        "The dead whale floating in Cook Inlet has washed ashore at Kincaid Park",
        "Cook Inlet, Anchorage, Alaska, United States",
        61.156,
        -150.047,
        "2017-09-25",
    ),
    (
        "w05",
        "Dead Humpback Whale (Megaptera novaeangliae)",
        "King Cove, Alaska, United States",
        55.062,
        -162.31,
        "2015-09-23",
    ),
    (
        "w06",
        "Beluga whale found dead south of Anchorage will help scientists better understand "
        "the endangered animals",
        "Girdwood, Alaska, United States",
        60.943,
        -149.166,
        "2021-05-27",
    ),
    (
        "w07",
        "Dead whales wash up near Unalaska, but pandemic complicates necropsies",
        "Unalaska, Alaska, United States",
        53.874,
        -166.537,
        "2020-08-27",
    ),
    (
        "w08",
        "Dead humpback whale calf washes up near Juneau, may have been struck by vessel",
        "Juneau, Alaska, United States",
        58.302,
        -134.42,
        "2023-08-28",
    ),
    (
        "w09",
        "Dead Humpback Whale (Megaptera novaeangliae) Floating by Moller Point",
        "King Cove Alaska",
        55.05,
        -162.29,
        "2020-08-18",
    ),
    (
        "w10",
        "Whale's body spotted near Tenakee Inlet",
        "Juneau, Alaska, United States",
        57.78,
        -135.219,
        "2022-02-10",
    ),
]

# unrelated events far from Alaska with their own vocabulary
_OTHER_ROWS = [
    ("o01", "Landslide blocks forest road after heavy rain", "Kuopio, Finland", 62.89, 27.678,
     "2022-10-12", ("Landslides",)),
    ("o02", "Bushfire smoke closes schools across the valley", "Canberra, Australia", -35.28,
     149.13, "2020-01-05", ("Wildfire",)),
    ("o03", "Record drought dries irrigation canals", "Zaragoza, Spain", 41.65, -0.889,
     "2022-07-30", ("Drought",)),
    ("o04", "Locust swarm devours millet crops", "Niamey, Niger", 13.512, 2.112, "2020-06-14",
     ("Insects",)),
    ("o05", "Glacial lake outburst floods mountain village", "Kathmandu, Nepal", 27.717, 85.324,
     "2021-08-01", ("Flooding",)),
    ("o06", "Coral bleaching spreads along northern reef", "Cairns, Australia", -16.92, 145.77,
     "2024-03-10", ("Coral",)),
]


def whale_events() -> list[EventRecord]:
    summaries = {
        KODIAK_QUERY_ID: "Biologists say a Humpback Whale washed ashore near Kodiak Island.",
    }
    events = []
    for event_id, title, location, latitude, longitude, date in _WHALE_ROWS:
        events.append(
            EventRecord(
                id=event_id,
                title=title,
                summary=summaries.get(event_id, f"Observers reported: {title}."),
                location_name=location,
                latitude=latitude,
                longitude=longitude,
                date=datetime.date.fromisoformat(date),
                categories=WHALE_TAGS,
                related_ids=KODIAK_HITS if event_id == KODIAK_QUERY_ID else (),
            )
        )
    for event_id, title, location, latitude, longitude, date, tags in _OTHER_ROWS:
        events.append(
            EventRecord(
                id=event_id,
                title=title,
                summary=f"Residents described it: {title.lower()}.",
                location_name=location,
                latitude=latitude,
                longitude=longitude,
                date=datetime.date.fromisoformat(date),
                categories=tags,
            )
        )
    return events


@pytest.fixture
def whale_corpus() -> Corpus:
    return Corpus(whale_events())


@pytest.fixture
def mock_provider() -> MockProvider:
    return MockProvider(ProviderConfig())


@pytest.fixture
def full_spec() -> SegmentSpec:
    return SegmentSpec()


@pytest.fixture
def write_jsonl(tmp_path):
    """Write records (dicts or raw strings) as a JSON Lines file and return its path."""

    def write(name: str, records: list) -> str:
        path = tmp_path / name
        lines = [r if isinstance(r, str) else json.dumps(r) for r in records]
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture(scope="session")
def synth():
    """The 200-event planted-cluster corpus and its judgments."""
    return synth_corpus(seed=42, n_events=200, n_clusters=10)


@pytest.fixture(scope="session")
def synth_reranker(synth):
    corpus, _ = synth
    return GtrReranker(corpus, MockProvider(ProviderConfig()), SegmentSpec(), GtrParams())


@pytest.fixture(scope="session")
def synth_prepared(synth, synth_reranker):
    _, judgments = synth
    return synth_reranker.prepare_many(judgments.evaluable_ids, GtrParams(), ALL_FEATURES)
