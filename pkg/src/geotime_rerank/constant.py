from pathlib import Path

PACKAGE_NAME = "geotime_rerank"

DEFAULT_OUTPUT_PATH = Path("./outputs/geotime_rerank")
"""Path: Default directory for command outputs (JSON, GeoJSON, text tables)."""

DEFAULT_OUTPUT_LOG_PATH = Path("./outputs/logs")
"""Path: Default directory for rotating log files."""

DEFAULT_SEED = 42
"""int: Default random seed recorded in every run manifest."""
