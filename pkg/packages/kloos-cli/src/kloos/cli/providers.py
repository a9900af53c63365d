"""This module contains different config providers."""

import abc
import io
import logging
import os
import pathlib
from collections.abc import Mapping
from typing import IO

from kloos.cli.consts import THREADS_ENV
from kloos.cli.parser import ConfigValue, parse_config
from kloos.cli.settings import ExperimentConfig
from kloos.core.exceptions import ConfigurationError

logger = logging.getLogger("kloos")


class ConfigProvider(abc.ABC):
    """Super class for all config providers.

    A provider returns the values it knows about; providers are combined with the
    `ChainConfigProvider`, where later providers win.
    """

    @abc.abstractmethod
    def load_config(self) -> dict[str, ConfigValue]:
        """Abstract method to load the config values.

        This function gets called in order to load the values from the source.
        Note that this function is not called with any arguments.

        Returns:
            the values by config key
        """
        raise NotImplementedError


class FileConfigProvider(ConfigProvider):
    """Config provider to read the values from a `key = value` file."""

    def __init__(self, file: str | pathlib.Path | IO | io.IOBase):
        filepath = None
        owned = False
        if isinstance(file, str):
            file = pathlib.Path(file)
        if isinstance(file, pathlib.Path):
            filepath = str(file.resolve())
            try:
                file = file.open("r", encoding="utf-8")
            except OSError as error:
                raise ConfigurationError(f"Unable to open config file {filepath!r}: {error.strerror}") from error
            owned = True
        self.filepath: str = filepath or getattr(file, "name", None)
        self.file = file
        self.owned: bool = owned

    def load_config(self) -> dict[str, ConfigValue]:
        """Method to load the values from the local file.

        Returns:
            the values from the file
        """
        logger.debug(f"Reading local config from `{self.filepath or self.file}`")
        try:
            text = self.file.read()
        finally:
            if self.owned:
                self.file.close()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        return parse_config(text)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(filepath={self.filepath!r})>"


class EnvConfigProvider(ConfigProvider):
    """Config provider that reads the thread count override from the environment."""

    def __init__(self, environ: Mapping[str, str] | None = None):
        self.environ: Mapping[str, str] = os.environ if environ is None else environ

    def load_config(self) -> dict[str, ConfigValue]:
        """Method to load the thread count from `KLOOS_THREADS` when it is set.

        Returns:
            either an empty dict or the threads value
        """
        raw = self.environ.get(THREADS_ENV)
        if raw is None or not raw.strip():
            return {}
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
        logger.debug(f"Using {threads} threads from {THREADS_ENV}")
        return {"threads": threads}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(variable={THREADS_ENV})>"


class ChainConfigProvider(ConfigProvider):
    """Config provider that merges other providers in order, the last one wins."""

    def __init__(self, *providers: ConfigProvider):
        self.providers: tuple[ConfigProvider, ...] = providers

    def load_config(self) -> dict[str, ConfigValue]:
        """Method to merge the values of every provider.

        Returns:
            the merged values
        """
        values: dict[str, ConfigValue] = {}
        for provider in self.providers:
            values.update(provider.load_config())
        return values

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(providers={list(self.providers)!r})>"


def load_experiment_config(provider: ConfigProvider, **overrides) -> ExperimentConfig:
    """Build the experiment config from a provider and explicit overrides.

    Args:
        provider: holds the source of the configured values
        overrides: holds values that win over the provider, None values are ignored

    Returns:
        the validated experiment config
    """
    values = provider.load_config()
    values.update({key: value for key, value in overrides.items() if value is not None})
    config = ExperimentConfig(**values)
    logger.debug(f"Using {config!r}")
    return config
