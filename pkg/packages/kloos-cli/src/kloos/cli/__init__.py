"""The exports for the kloos.cli module."""

# skipcq: PY-W2000
from kloos.core import *  # noqa

from kloos.cli.acceptance import run_acceptance  # skipcq: PY-W2000
from kloos.cli.providers import (  # skipcq: PY-W2000
    ChainConfigProvider,
    ConfigProvider,
    EnvConfigProvider,
    FileConfigProvider,
)
from kloos.cli.settings import ExperimentConfig  # skipcq: PY-W2000
