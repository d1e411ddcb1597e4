import importlib
import logging
from pathlib import Path

import yaml

from geotime_rerank.event_model import Corpus

from .abstract_provider import AbstractProvider
from .constant import PROVIDER_FACTORY_CONFIG_FILE
from .entity_override import load_entity_overrides
from .provider_config import ProviderConfig


class ProviderFactory:
    """
    Factory creating providers from a YAML mapping ``kind -> {module, class}``.
    """

    def __init__(self, config_file: Path = PROVIDER_FACTORY_CONFIG_FILE) -> None:
        self.config_file = Path(config_file)
        if not self.config_file.exists():
            raise FileNotFoundError(f"Config file {self.config_file} not found.")
        if self.config_file.suffix not in (".yml", ".yaml"):
            raise ValueError(f"Config file {self.config_file} must be a YAML file.")

        try:
            with open(self.config_file) as file:
                self.providers_config = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"Error parsing YAML config file {self.config_file}") from e

    def create_provider(
        self,
        config: ProviderConfig,
        corpus: Corpus | None = None,
        logger: logging.Logger | None = None,
    ) -> AbstractProvider:
        """
        Create the provider selected by ``config.kind``.

        Entity overrides named by ``config.overrides_path`` are loaded and checked
        against ``corpus`` when one is given.

        Raises:
            ValueError: If the kind has no registered implementation.
            ImportError: If the registered class cannot be imported.
        """
        kind = config.kind.value
        if kind not in self.providers_config:
            raise ValueError(
                f"Unsupported provider kind: {kind}. "
                f"Available kinds: {list(self.providers_config.keys())}"
            )

        overrides = (
            load_entity_overrides(Path(config.overrides_path), corpus=corpus, logger=logger)
            if config.overrides_path
            else None
        )

        module_path = self.providers_config[kind]["module"]
        class_name = self.providers_config[kind]["class"]
        try:
            module = importlib.import_module(module_path)
            provider_class = getattr(module, class_name)
        except (ImportError, AttributeError) as e:
            raise ImportError(
                f"Failed to import provider class for kind {kind}. Error: {e}"
            ) from e
        return provider_class(config, overrides=overrides, logger=logger)


def create_provider(
    config: ProviderConfig,
    corpus: Corpus | None = None,
    logger: logging.Logger | None = None,
) -> AbstractProvider:
    """Shortcut for ``ProviderFactory().create_provider(...)`` with the packaged mapping."""
    return ProviderFactory().create_provider(config, corpus=corpus, logger=logger)
