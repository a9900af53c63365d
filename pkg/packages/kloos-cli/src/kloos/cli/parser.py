"""This file contains the parser of the experiment config file.

The grammar is line based:

    # comments start with a hash and run to the end of the line
    threads = 4
    term_budget = 1_000_000_000
    tolerance = 1e-9
    output_dir = results

Every key is a field of the experiment config and appears at most once.
"""

import math
import pathlib
import re

from kloos.core.exceptions import ConfigParseError

INTEGER_KEYS = (
    "totient_cap",
    "direct_cap",
    "term_budget",
    "point_cap",
    "exact_box_cap",
    "block_size",
    "threads",
    "seed",
)
FLOAT_KEYS = ("tolerance", "identity_tolerance")
PATH_KEYS = ("output_dir",)

CONFIG_KEYS = INTEGER_KEYS + FLOAT_KEYS + PATH_KEYS

ConfigValue = int | float | pathlib.Path

_KEY = re.compile(r"^[a-z_]+$")
_INTEGER = re.compile(r"^[+-]?\d+(_\d+)*$")


def strip_comment(line: str) -> str:
    """Remove a trailing comment and surrounding whitespace."""
    return line.split("#", 1)[0].strip()


def parse_value(key: str, raw: str, line_number: int, line: str) -> ConfigValue:
    """Convert the raw value of a known key.

    Args:
        key: holds the config key
        raw: holds the value text without comment and whitespace
        line_number: holds the 1-based line number, for error messages
        line: holds the original line, for error messages

    Returns:
        an int, a float or a path depending on the key
    """
    if key in INTEGER_KEYS:
        if not _INTEGER.match(raw):
            raise ConfigParseError(line_number, line, f"line {line_number}: {key} expects an integer, got {raw!r}")
        return int(raw)
    if key in FLOAT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            message = f"line {line_number}: {key} expects a number, got {raw!r}"
            raise ConfigParseError(line_number, line, message) from None
        if not math.isfinite(value):
            raise ConfigParseError(line_number, line, f"line {line_number}: {key} must be finite, got {raw!r}")
        return value
    return pathlib.Path(raw)


def parse_line(line_number: int, line: str) -> tuple[str, str] | None:
    """Split a line into key and raw value, None for blank and comment lines."""
    content = strip_comment(line)
    if not content:
        return None
    key, separator, raw = content.partition("=")
    key, raw = key.strip(), raw.strip()
    if not separator or not _KEY.match(key) or not raw:
        raise ConfigParseError(line_number, line, f"line {line_number}: expected `key = value`, got {line.strip()!r}")
    if key not in CONFIG_KEYS:
        raise ConfigParseError(line_number, line, f"line {line_number}: unknown key {key!r}")
    return key, raw


def parse_config(text: str) -> dict[str, ConfigValue]:
    """Parse the text of a config file.

    Args:
        text: holds the whole file

    Returns:
        the configured values by key, in file order
    """
    values: dict[str, ConfigValue] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        parsed = parse_line(line_number, line)
        if parsed is None:
            continue
        key, raw = parsed
        if key in values:
            raise ConfigParseError(line_number, line, f"line {line_number}: duplicate key {key!r}")
        values[key] = parse_value(key, raw, line_number, line)
    return values
