"""
Constants of the command-line surface.
"""

from enum import IntEnum


class ExitCode(IntEnum):
    """
    Process exit codes.

    Attributes:
        ok: Success.
        usage: Bad arguments or configuration.
        data: Invalid corpus, unknown event id, missing file or nothing to evaluate.
        provider: Model provider failure.
    """

    ok = 0
    usage = 1
    data = 2
    provider = 3


COMMANDS = (
    "ingest",
    "embed",
    "retrieve",
    "rerank",
    "eval",
    "grid-search",
    "ablate",
    "synth",
    "compare-segments",
)

CACHE_SUBDIR = "cache"
INDEX_SUBDIR = "index"
SYNTH_CORPUS_FILE = "synth_corpus.jsonl"
EVAL_REPORT_FILE = "eval_report.json"
EVAL_TABLE_FILE = "eval_table.txt"
GRID_REPORT_FILE = "grid.json"
GRID_TABLE_FILE = "grid_table.txt"
ABLATION_REPORT_FILE = "ablation.json"
ABLATION_TABLE_FILE = "ablation_table.txt"
SEGMENTS_REPORT_FILE = "segments.json"
SEGMENTS_TABLE_FILE = "segments_table.txt"

GEOJSON_CIRCLE_SEGMENTS = 64
GEOJSON_PARALLEL_STEP_DEG = 10.0

CLI_LOGGER_NAME = "GEOTIME_RERANK"
