"""This file contains the writer for CSV reports."""

import logging
from collections.abc import Iterable
from typing import IO

from kloos.cli.consts import CSV_HEADER, CSV_PRECISION
from kloos.core import BoundRatioRow

logger = logging.getLogger("kloos")


def format_number(value: int | float | str | None) -> str:
    """Format a CSV cell, floats with 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{CSV_PRECISION}g}"
    return str(value)


def format_row(row: BoundRatioRow) -> str:
    return ",".join(format_number(cell) for cell in row.as_row())


def write_rows(rows: Iterable[BoundRatioRow], handle: IO) -> int:
    """Write the report header and one line per row.

    Args:
        rows: holds the report rows
        handle: holds the open text stream

    Returns:
        the number of rows written
    """
    handle.write(",".join(CSV_HEADER) + "\n")
    written = 0
    for row in rows:
        handle.write(format_row(row) + "\n")
        written += 1
    logger.debug(f"Wrote {written} report rows")
    return written
