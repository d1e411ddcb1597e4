import json
from pathlib import Path

import pytest

from geotime_rerank.cli import RunConfig, circle_geometry, geodesic_circle
from geotime_rerank.cli.main import main, translate_args
from geotime_rerank.event_model import GeoPoint, serialize_corpus
from geotime_rerank.gtr import haversine_km


@pytest.fixture
def out_dir(tmp_path) -> Path:
    return tmp_path / "outputs"


@pytest.fixture
def run_cli(capsys, tmp_path, out_dir):
    """Run the command line and return its exit code and the JSON document it printed."""

    def run(command: str, *args: str) -> tuple[int, dict]:
        argv = [
            command,
            *args,
            f"--output_dir={out_dir}",
            f"--log_config.log_dir={tmp_path / 'logs'}",
            "--log_config.log_to_console=false",
        ]
        code = main(argv)
        out = capsys.readouterr().out.strip()
        return code, json.loads(out.splitlines()[-1]) if out else {}

    return run


@pytest.fixture
def whale_path(tmp_path, whale_corpus) -> str:
    path = tmp_path / "whales.jsonl"
    path.write_bytes(serialize_corpus(whale_corpus))
    return str(path)


@pytest.fixture
def synth_path(run_cli, tmp_path) -> str:
    path = tmp_path / "synth.jsonl"
    code, doc = run_cli(
        "synth",
        f"--corpus_path={path}",
        "--seed=4",
        "--synth.n_events=40",
        "--synth.n_clusters=4",
    )
    assert code == 0
    assert doc["n_z"] == 40
    return str(path)


def test_translate_args_rewrites_shorthands():
    assert translate_args(["q1", "--param", "gtr.tau_d=300", "--geojson"]) == [
        "--query_id=q1",
        "--gtr.tau_d=300",
        "--geojson=true",
    ]
    assert translate_args(["--features=semantic, distance", "--jobs=2"]) == [
        "--gtr.enabled_features=[semantic,distance]",
        "--jobs=2",
    ]
    assert translate_args(["--param=gtr.w_s=0.5"]) == ["--gtr.w_s=0.5"]


@pytest.mark.parametrize("args", [["--param"], ["--features"], ["--param", "tau_d"]])
def test_translate_args_rejects_incomplete_shorthands(args):
    with pytest.raises(ValueError):
        translate_args(args)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
    with pytest.raises(ValueError):
        RunConfig(cutoffs=[0, 10])
    manifest = RunConfig().manifest()
    assert manifest["gtr"]["rrf_k"] == 60
    assert manifest["segment_spec"]["with_prefix"] is True


def test_unknown_command_is_a_usage_error():
    assert main(["teleport"]) == 1


def test_ingest_valid_corpus(run_cli, whale_path, whale_corpus):
    code, doc = run_cli("ingest", f"--corpus_path={whale_path}")
    assert code == 0
    assert doc["n_z"] == whale_corpus.n_z
    assert doc["errors"] == 0


def test_ingest_reports_bad_lines(run_cli, tmp_path, whale_path):
    path = tmp_path / "broken.jsonl"
    path.write_bytes(Path(whale_path).read_bytes() + b"{oops\n")
    code, doc = run_cli("ingest", f"--corpus_path={path}")
    assert code == 2
    assert doc["error"] == "CorpusValidationError"
    assert doc["diagnostics"][-1]["kind"] == "malformed_json"


def test_ingest_reports_undecodable_line(run_cli, tmp_path, whale_path, whale_corpus):
    path = tmp_path / "latin.jsonl"
    path.write_bytes(Path(whale_path).read_bytes() + b"\xff\xfe\n")
    code, doc = run_cli("ingest", f"--corpus_path={path}")
    assert code == 2
    assert doc["error"] == "CorpusValidationError"
    assert doc["diagnostics"][-1]["kind"] == "invalid_encoding"
    assert doc["diagnostics"][-1]["line"] == whale_corpus.n_z + 1


def test_ingest_empty_corpus_is_ok(run_cli, tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_bytes(b"")
    code, doc = run_cli("ingest", f"--corpus_path={path}")
    assert code == 0
    assert doc["n_z"] == 0
    assert doc["warnings"] == 1


def test_missing_corpus_is_a_data_error(run_cli, tmp_path):
    code, doc = run_cli("ingest", f"--corpus_path={tmp_path / 'absent.jsonl'}")
    assert code == 2
    assert doc["error"] == "FileNotFoundError"


def test_second_embed_is_served_from_cache(run_cli, synth_path, out_dir):
    code, first = run_cli("embed", f"--corpus_path={synth_path}")
    assert code == 0
    assert first["computed"] > 0
    assert first["dimension"] == 256
    assert (out_dir / "index").is_dir()

    code, second = run_cli("embed", f"--corpus_path={synth_path}")
    assert code == 0
    assert second["computed"] == 0
    assert second["cache_hits"] == first["computed"]


def test_retrieve_lists_stage_one_candidates(run_cli, whale_path, whale_corpus):
    code, doc = run_cli("retrieve", "q-kodiak", f"--corpus_path={whale_path}")
    assert code == 0
    ids = [c["id"] for c in doc["candidates"]]
    assert len(ids) == whale_corpus.n_z - 1
    assert "q-kodiak" not in ids
    assert [c["rank"] for c in doc["candidates"]] == list(range(1, len(ids) + 1))


def test_rerank_writes_json_and_geojson(run_cli, whale_path, out_dir):
    code, doc = run_cli("rerank", "q-kodiak", f"--corpus_path={whale_path}", "--geojson")
    assert code == 0
    assert len(doc["candidates"]) == 10
    assert (out_dir / "rerank_q-kodiak.json").is_file()

    collection = json.loads((out_dir / "rerank_q-kodiak.geojson").read_text())
    roles = [f["properties"]["role"] for f in collection["features"]]
    assert roles.count("query") == 1
    assert roles.count("candidate") == 10
    assert roles.count("link") == 10
    assert roles.count("distance_threshold") == 1
    assert roles.count("latitude_band") == 2
    query = collection["features"][0]
    assert query["geometry"]["coordinates"] == [-152.407, 57.79]
    candidate_ids = [
        f["properties"]["id"]
        for f in collection["features"]
        if f["properties"]["role"] == "candidate"
    ]
    assert candidate_ids == [c["id"] for c in doc["candidates"]]


def test_rerank_with_semantic_only(run_cli, whale_path):
    code, doc = run_cli(
        "rerank", "q-kodiak", f"--corpus_path={whale_path}", "--features", "semantic"
    )
    assert code == 0
    assert doc["params"]["enabled_features"] == ["semantic"]
    assert all(set(c["features"]) == {"semantic"} for c in doc["candidates"])


def test_rerank_unknown_query_is_a_data_error(run_cli, whale_path):
    code, doc = run_cli("rerank", "nobody", f"--corpus_path={whale_path}")
    assert code == 2
    assert doc["error"] == "UnknownEventError"


def test_rerank_without_query_is_a_usage_error(run_cli, whale_path):
    code, _ = run_cli("rerank", f"--corpus_path={whale_path}")
    assert code == 1


def test_invalid_parameter_is_a_usage_error(run_cli, whale_path):
    code, _ = run_cli(
        "rerank", "q-kodiak", f"--corpus_path={whale_path}", "--param", "gtr.beta_d=0"
    )
    assert code == 1


def test_eval_grid_and_ablation_outputs(run_cli, synth_path, out_dir):
    code, doc = run_cli("eval", f"--corpus_path={synth_path}", "--gtr.n_retrieve=30")
    assert code == 0
    assert [r["name"] for r in doc["reports"]] == ["dense", "bm25", "bm25_boosted", "gtr"]
    assert "per_query" in json.loads((out_dir / "eval_report.json").read_text())["reports"][0]
    assert (out_dir / "eval_table.txt").read_text().splitlines()[0].startswith("Run")

    code, doc = run_cli("grid-search", f"--corpus_path={synth_path}", "--gtr.n_retrieve=30")
    assert code == 0
    assert len(doc["points"]) == 11
    assert (out_dir / "grid_table.txt").is_file()

    code, doc = run_cli("ablate", f"--corpus_path={synth_path}", "--gtr.n_retrieve=30", "--jobs=2")
    assert code == 0
    assert [row["removed"] for row in doc["rows"]] == [
        "none",
        "latitude",
        "temporal",
        "distance",
        "category",
        "semantic",
    ]
    assert (out_dir / "ablation.json").is_file()


def test_compare_segments_output(run_cli, synth_path, out_dir):
    code, doc = run_cli("compare-segments", f"--corpus_path={synth_path}", "--gtr.n_retrieve=10")
    assert code == 0
    assert len(doc["rows"]) == 8
    assert (out_dir / "segments_table.txt").is_file()


def test_eval_without_relevance_links_is_a_data_error(run_cli, tmp_path, whale_corpus):
    path = tmp_path / "unlinked.jsonl"
    lines = [
        json.dumps({**json.loads(line), "related_ids": []})
        for line in serialize_corpus(whale_corpus).decode("utf-8").splitlines()
    ]
    path.write_text("\n".join(lines) + "\n")
    code, doc = run_cli("eval", f"--corpus_path={path}")
    assert code == 2
    assert doc["error"] == "EvaluationError"


def test_pipeline_outputs_are_byte_identical(run_cli, synth_path, out_dir):
    def pipeline() -> tuple[bytes, bytes]:
        for command, args in (
            ("ingest", ()),
            ("embed", ()),
            ("rerank", ("ev0000",)),
            ("eval", ("--gtr.n_retrieve=30",)),
        ):
            code, _ = run_cli(command, *args, f"--corpus_path={synth_path}")
            assert code == 0
        return (
            (out_dir / "rerank_ev0000.json").read_bytes(),
            (out_dir / "eval_report.json").read_bytes(),
        )

    assert pipeline() == pipeline()


def test_geodesic_circle_is_closed_and_at_radius():
    center = GeoPoint(57.79, -152.407)
    ring = geodesic_circle(center, 500.0, 6371.0, segments=16)
    assert len(ring) == 17
    assert ring[0] == ring[-1]
    for lon, lat in ring:
        assert haversine_km(center, GeoPoint(lat, lon)) == pytest.approx(500.0, abs=1e-6)


def test_circle_geometry_away_from_antimeridian_is_one_polygon():
    center = GeoPoint(57.79, -152.407)
    geometry = circle_geometry(center, 500.0, 6371.0, segments=16)
    assert geometry == {
        "type": "Polygon",
        "coordinates": [geodesic_circle(center, 500.0, 6371.0, segments=16)],
    }


@pytest.mark.parametrize("longitude, meridian", [(179.5, 180.0), (-179.5, -180.0)])
def test_circle_geometry_splits_at_antimeridian(longitude, meridian):
    geometry = circle_geometry(GeoPoint(-17.0, longitude), 500.0, 6371.0, segments=32)
    assert geometry["type"] == "MultiPolygon"
    near, far = (polygon[0] for polygon in geometry["coordinates"])
    for ring in (near, far):
        assert ring[0] == ring[-1]
        assert all(-180.0 <= lon <= 180.0 for lon, _ in ring)
    assert any(lon == meridian for lon, _ in near)
    assert any(lon == -meridian for lon, _ in far)
    assert all(abs(lon) > 170.0 for lon, _ in near + far)


def test_circle_geometry_around_a_pole():
    geometry = circle_geometry(GeoPoint(88.0, 20.0), 500.0, 6371.0, segments=32)
    assert geometry["type"] == "Polygon"
    (ring,) = geometry["coordinates"]
    assert ring[0] == ring[-1]
    assert all(-180.0 <= lon <= 180.0 for lon, _ in ring)
    assert [180.0, 90.0] in ring
