"""This file contains the constants of the command line interface."""

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_CAPACITY = 2
EXIT_USAGE = 3

# version of the JSON documents written by `disc` and `report`
SCHEMA_VERSION = 1

CSV_HEADER = ("M", "N", "X", "kind", "measured", "envelope", "ratio")

# digits for every float written to CSV
CSV_PRECISION = 17

THREADS_ENV = "KLOOS_THREADS"

DEFAULT_CONFIG_NAME = "kloos.conf"

# frozen regression bound for box discrepancy times X**(5/6) over X in 25..400
BOX_ENVELOPE_CONSTANT = 8.0
