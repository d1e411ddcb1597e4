from .commands import (
    COMMAND_HANDLERS,
    cmd_ablate,
    cmd_compare_segments,
    cmd_embed,
    cmd_eval,
    cmd_grid,
    cmd_ingest,
    cmd_rerank,
    cmd_retrieve,
    cmd_synth,
)
from .constant import ExitCode
from .geojson_export import circle_geometry, geodesic_circle, rerank_feature_collection
from .run_config import RunConfig, SegmentConfig, SynthConfig

__all__ = [
    "COMMAND_HANDLERS",
    "ExitCode",
    "RunConfig",
    "SegmentConfig",
    "SynthConfig",
    "cmd_ablate",
    "cmd_compare_segments",
    "cmd_embed",
    "cmd_eval",
    "cmd_grid",
    "cmd_ingest",
    "cmd_rerank",
    "cmd_retrieve",
    "cmd_synth",
    "circle_geometry",
    "geodesic_circle",
    "rerank_feature_collection",
]
