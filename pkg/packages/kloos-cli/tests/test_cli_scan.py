import pytest

from kloos.cli.consts import EXIT_CAPACITY, EXIT_USAGE
from kloos.core import oracles

HEADER = "M,N,X,kind,measured,envelope,ratio"


def _rows(output: str) -> list[list[str]]:
    lines = output.splitlines()
    assert lines[0] == HEADER
    return [line.split(",") for line in lines[1:]]


# skipcq: PY-D0003
def test_cli_scan_triple(invoke):
    result = invoke("scan", "triple", "--M", "1", "--N", "1", "--X", "1")
    assert result.exit_code == 0, result.output
    assert _rows(result.stdout) == [["1", "1", "1", "triple", "4", "2", "2"]]


# skipcq: PY-D0003
def test_cli_scan_sum(invoke):
    result = invoke("scan", "sum", "--m", "1", "--n", "1", "--X", "4")
    assert result.exit_code == 0, result.output
    rows = _rows(result.stdout)
    assert [row[2] for row in rows] == ["1", "2", "3", "4"]
    assert all(row[3] == "sum" for row in rows)
    assert [float(row[4]) for row in rows] == pytest.approx([1.0, 2.0, 1.0, -1.0], abs=1e-12)


# skipcq: PY-D0003
def test_cli_scan_moment2(invoke):
    result = invoke("scan", "moment2", "--N", "2", "--X", "10")
    assert result.exit_code == 0, result.output
    [row] = _rows(result.stdout)
    assert row[:4] == ["1", "2", "10", "moment2"]
    assert float(row[4]) == pytest.approx(oracles.second_moment(2, 10), rel=1e-9)


@pytest.mark.parametrize("kind", ["moment2n", "linnik"])
# skipcq: PY-D0003
def test_cli_scan_other_kinds(invoke, kind: str):
    result = invoke("scan", kind, "--N", "1", "--X", "12")
    assert result.exit_code == 0, result.output
    [row] = _rows(result.stdout)
    assert row[3] == kind
    assert float(row[6]) == pytest.approx(float(row[4]) / float(row[5]))


# skipcq: PY-D0003
def test_cli_scan_is_deterministic(invoke):
    first = invoke("--threads", "1", "scan", "triple", "--M", "2", "--N", "2", "--X", "60")
    second = invoke("--threads", "4", "scan", "triple", "--M", "2", "--N", "2", "--X", "60")
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


# skipcq: PY-D0003
def test_cli_scan_out(invoke, tmp_path):
    result = invoke("scan", "sum", "--m", "0", "--n", "1", "--X", "4", "--out", "series.csv")
    assert result.exit_code == 0, result.output
    assert result.stdout == ""
    lines = (tmp_path / "out" / "series.csv").read_text().splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 5


# skipcq: PY-D0003
def test_cli_scan_budget(runner, tmp_path):
    from kloos.cli.commands import main

    config = tmp_path / "budget.conf"
    config.write_text("term_budget = 100\n")
    result = runner.invoke(main, ["--config", str(config), "scan", "triple", "--X", "100"])
    assert result.exit_code == EXIT_CAPACITY


# skipcq: PY-D0003
def test_cli_scan_unknown_kind(invoke):
    assert invoke("scan", "quadruple", "--X", "4").exit_code == EXIT_USAGE
