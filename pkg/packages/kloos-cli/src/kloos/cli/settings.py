"""This file contains the settings that can be overwritten from a config file or the command line."""

import json
import pathlib
from collections.abc import Callable
from typing import Any

from kloos.core import ConfigurationError, Settings


class ExperimentConfig(Settings):
    """Class that represents the settings of a command line experiment.

    Besides every capacity and tolerance of the library settings it holds the directory
    output files are written to and the function used to serialize JSON documents.
    """

    def __init__(
        self,
        output_dir: str | pathlib.Path = ".",
        json_dumps: Callable[..., str] = json.dumps,
        **kwargs,
    ):
        self.output_dir: pathlib.Path = pathlib.Path(output_dir)
        self.json_dumps: Callable[..., str] = json_dumps
        super().__init__(**kwargs)

    def validate(self) -> None:
        super().validate()
        if self.output_dir.exists() and not self.output_dir.is_dir():
            raise ConfigurationError(f"output_dir {str(self.output_dir)!r} is not a directory")

    def dumps(self, document: Any) -> str:
        """Serialize a document with sorted keys, so equal documents give equal bytes."""
        return self.json_dumps(document, indent=2, sort_keys=True)

    def output_path(self, name: str | pathlib.Path) -> pathlib.Path:
        """Return where an output file is written, creating the output directory when needed.

        Absolute paths are returned unchanged.
        """
        path = pathlib.Path(name)
        if path.is_absolute():
            return path
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / path

    def __repr__(self) -> str:
        settings = super().__repr__()[:-2]
        return f"{settings}, output_dir={str(self.output_dir)!r})>"
