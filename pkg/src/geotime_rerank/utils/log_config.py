from dataclasses import dataclass

from geotime_rerank.constant import DEFAULT_OUTPUT_LOG_PATH


@dataclass
class LogConfig:
    """
    Configuration class for logging settings.

    Attributes:
        log_dir (str): Directory where rotating log files are stored. An empty string
            disables file logging. Defaults to ``./outputs/logs``.
        log_to_console (bool): Whether logs are also written to standard error. Defaults to True.
        log_level (str): Logging level name ("DEBUG", "INFO", "WARNING", "ERROR").
            Defaults to "INFO".
    """

    log_dir: str = str(DEFAULT_OUTPUT_LOG_PATH)
    log_to_console: bool = True
    log_level: str = "INFO"
