import json

import pytest

from kloos.cli.consts import EXIT_CAPACITY


@pytest.mark.parametrize("X,rows", [(1, 1), (10, 32), (600, 109500)])
# skipcq: PY-D0003
def test_cli_points_csv(invoke, tmp_path, X: int, rows: int):
    result = invoke("points", "--X", str(X), "--csv")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["count"] == document["rows"] == rows
    lines = (tmp_path / "out" / f"points-{X}.csv").read_text().splitlines()
    assert lines[0] == "a,b,c"
    assert len(lines) == rows + 1


# skipcq: PY-D0003
def test_cli_points_csv_content(invoke, tmp_path):
    assert invoke("points", "--X", "3", "--csv").exit_code == 0
    lines = (tmp_path / "out" / "points-3.csv").read_text().splitlines()
    assert lines == ["a,b,c", "1,1,1", "1,1,2", "1,1,3", "2,2,3"]


# skipcq: PY-D0003
def test_cli_points_svg(invoke, tmp_path):
    result = invoke("points", "--X", "10", "--svg")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert "csv" not in document
    svg = (tmp_path / "out" / "points-10.svg").read_text()
    assert svg.startswith("<svg")
    assert 'viewBox="0 0 1000 1000"' in svg
    assert svg.count("<circle") == 32


# skipcq: PY-D0003
def test_cli_points_count_only(invoke, tmp_path):
    result = invoke("points", "--X", "4")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout) == {"X": 4, "count": 6}
    assert not (tmp_path / "out").exists()


# skipcq: PY-D0003
def test_cli_points_capacity(invoke):
    result = invoke("points", "--X", "5001")
    assert result.exit_code == EXIT_CAPACITY
