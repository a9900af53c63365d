import pathlib

import pytest

from conftest import CONFIG_TEXT
from kloos.cli.parser import CONFIG_KEYS, parse_config, parse_line, strip_comment
from kloos.core.exceptions import ConfigParseError


# skipcq: PY-D0003
def test_parse_config():
    values = parse_config(CONFIG_TEXT)
    assert values == {"point_cap": 1000, "exact_box_cap": 500, "block_size": 8, "seed": 7, "tolerance": 1e-9}
    assert isinstance(values["point_cap"], int)
    assert isinstance(values["tolerance"], float)


# skipcq: PY-D0003
def test_parse_config_values():
    values = parse_config("term_budget = 1_000_000\nidentity_tolerance = 2\noutput_dir = results/run 1\n")
    assert values["term_budget"] == 1_000_000
    assert values["identity_tolerance"] == 2.0
    assert values["output_dir"] == pathlib.Path("results/run 1")


# skipcq: PY-D0003
def test_parse_config_empty():
    assert parse_config("") == {}
    assert parse_config("# only a comment\n\n   \n") == {}


# skipcq: PY-D0003
def test_strip_comment():
    assert strip_comment("  threads = 2  # two  ") == "threads = 2"
    assert strip_comment("# nothing") == ""


# skipcq: PY-D0003
def test_parse_line():
    assert parse_line(1, "threads=4") == ("threads", "4")
    assert parse_line(2, "   ") is None


# skipcq: PY-D0003
def test_config_keys():
    assert "output_dir" in CONFIG_KEYS
    assert "json_dumps" not in CONFIG_KEYS


@pytest.mark.parametrize(
    "text,line_number",
    [
        ("threads 4", 1),
        ("seed = 1\n= 4", 2),
        ("\n\nthreads =", 3),
        ("colour = blue", 1),
        ("threads = 1\nthreads = 2", 2),
        ("threads = four", 1),
        ("threads = 1.5", 1),
        ("threads = 1__0", 1),
        ("tolerance = small", 1),
        ("tolerance = nan", 1),
        ("Threads = 1", 1),
    ],
)
# skipcq: PY-D0003
def test_parse_config_errors(text: str, line_number: int):
    with pytest.raises(ConfigParseError) as info:
        parse_config(text)
    assert info.value.line_number == line_number
    assert f"line {line_number}" in str(info.value)
