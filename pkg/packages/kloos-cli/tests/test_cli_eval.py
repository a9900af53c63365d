import json

import pytest

from kloos.cli.consts import EXIT_CAPACITY, EXIT_USAGE


@pytest.mark.parametrize("m,n,c,expected", [(1, 1, 3, -1.0), (0, 0, 10, 4.0), (1, 1, 1, 1.0), (1, 1, 4, -2.0)])
# skipcq: PY-D0003
def test_cli_eval(invoke, m: int, n: int, c: int, expected: float):
    result = invoke("eval", "--m", str(m), "--n", str(n), "--c", str(c))
    assert result.exit_code == 0, result.output
    assert float(result.stdout) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("method", ["direct", "crt", "fast", "crt-split", "dft"])
# skipcq: PY-D0003
def test_cli_eval_methods(invoke, method: str):
    result = invoke("eval", "--m", "3", "--n", "5", "--c", "84", "--method", method)
    assert result.exit_code == 0, result.output
    reference = invoke("eval", "--m", "3", "--n", "5", "--c", "84")
    assert float(result.stdout) == pytest.approx(float(reference.stdout), abs=1e-9)


# skipcq: PY-D0003
def test_cli_eval_json(invoke):
    result = invoke("eval", "--m", "0", "--n", "0", "--c", "10", "--json")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["value"] == pytest.approx(4.0)
    assert document["term_count"] == 4
    assert document["method"] == "direct"
    assert list(document) == sorted(document)


# skipcq: PY-D0003
def test_cli_eval_capacity(runner, tmp_path):
    from kloos.cli.commands import main

    config = tmp_path / "small.conf"
    config.write_text("direct_cap = 1000\n")
    result = runner.invoke(main, ["--config", str(config), "eval", "--m", "1", "--n", "1", "--c", "1009"])
    assert result.exit_code == EXIT_CAPACITY
    assert "exceeds the configured limit 1000" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--m", "1", "--n", "1", "--c", "0"],
        ["eval", "--m", "1", "--n", "1"],
        ["eval", "--m", "1", "--n", "1", "--c", "3", "--method", "magic"],
        ["evaluate"],
        ["--threads", "0", "eval", "--m", "1", "--n", "1", "--c", "3"],
    ],
)
# skipcq: PY-D0003
def test_cli_usage_errors(invoke, args: list[str]):
    result = invoke(*args)
    assert result.exit_code == EXIT_USAGE


# skipcq: PY-D0003
def test_cli_missing_config(runner, tmp_path):
    from kloos.cli.commands import main

    args = ["--config", str(tmp_path / "missing.conf"), "eval", "--m", "1", "--n", "1", "--c", "3"]
    result = runner.invoke(main, args)
    assert result.exit_code == EXIT_USAGE
    assert "Unable to open config file" in result.stderr


# skipcq: PY-D0003
def test_cli_bad_config_line(runner, tmp_path):
    from kloos.cli.commands import main

    config = tmp_path / "bad.conf"
    config.write_text("threads = 2\ncolour = blue\n")
    result = runner.invoke(main, ["--config", str(config), "eval", "--m", "1", "--n", "1", "--c", "3"])
    assert result.exit_code == EXIT_USAGE
    assert "line 2" in result.stderr


# skipcq: PY-D0003
def test_cli_bad_thread_environment(invoke, monkeypatch):
    monkeypatch.setenv("KLOOS_THREADS", "many")
    result = invoke("eval", "--m", "1", "--n", "1", "--c", "3")
    assert result.exit_code == EXIT_USAGE
    assert "KLOOS_THREADS" in result.stderr


# skipcq: PY-D0003
def test_cli_config_file(runner, config_file):
    from kloos.cli.commands import main

    result = runner.invoke(main, ["--config", str(config_file), "-v", "eval", "--m", "1", "--n", "1", "--c", "3"])
    assert result.exit_code == 0, result.output
    assert float(result.stdout) == pytest.approx(-1.0)


# skipcq: PY-D0003
def test_cli_help(invoke):
    result = invoke("--help")
    assert result.exit_code == 0
    for command in ("eval", "scan", "points", "disc", "report"):
        assert command in result.stdout
