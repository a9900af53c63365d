import pathlib

import pytest
from click.testing import CliRunner

from kloos.cli import ExperimentConfig
from kloos.cli.commands import main

CONFIG_TEXT = """\
# small capacities for the tests
point_cap = 1_000
exact_box_cap = 500
block_size = 8
seed = 7  # trailing comment
tolerance = 1e-9
"""


@pytest.fixture(autouse=True)
def no_thread_override(monkeypatch):
    monkeypatch.delenv("KLOOS_THREADS", raising=False)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def config_file(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "kloos.conf"
    path.write_text(CONFIG_TEXT, encoding="utf-8")
    return path


@pytest.fixture
def config(tmp_path: pathlib.Path) -> ExperimentConfig:
    return ExperimentConfig(output_dir=tmp_path / "out", block_size=8)


@pytest.fixture
def invoke(runner: CliRunner, tmp_path: pathlib.Path):
    """Run `kloos` with the output directory inside the test's temporary directory."""

    def run(*args: str, **kwargs):
        return runner.invoke(main, ["--output-dir", str(tmp_path / "out"), *args], **kwargs)

    return run
