"""This file contains the settings that control capacities, tolerances and parallelism."""

import sys

from kloos.core.exceptions import ConfigurationError

_INTEGER_FIELDS = (
    "totient_cap",
    "direct_cap",
    "term_budget",
    "point_cap",
    "exact_box_cap",
    "block_size",
    "threads",
)
_TOLERANCE_FIELDS = ("tolerance", "identity_tolerance")


class Settings:
    """Class that represents the settings that can be adjusted to your liking.

    Every capacity is checked before work starts, the tolerances are used by the
    self checks and the parallel options never change a numeric result.
    """

    def __init__(
        self,
        totient_cap: int = 10**7,
        direct_cap: int = 10**7,
        term_budget: int = 10**9,
        point_cap: int = 5000,
        exact_box_cap: int = 1000,
        block_size: int = 256,
        threads: int = 1,
        seed: int = 0,
        tolerance: float = 1e-9,
        identity_tolerance: float = 1e-6,
    ):
        self.totient_cap: int = totient_cap
        self.direct_cap: int = direct_cap
        self.term_budget: int = term_budget
        self.point_cap: int = point_cap
        self.exact_box_cap: int = exact_box_cap
        self.block_size: int = block_size
        self.threads: int = threads
        self.seed: int = seed
        self.tolerance: float = tolerance
        self.identity_tolerance: float = identity_tolerance
        self.validate()

    def validate(self) -> None:
        """Check that every count is positive and every tolerance is representable.

        Raises:
            ConfigurationError: when a field is out of range
        """
        for name in _INTEGER_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigurationError(f"seed must be a non-negative integer, got {self.seed!r}")
        for name in _TOLERANCE_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value < sys.float_info.epsilon:
                raise ConfigurationError(f"{name} must be at least machine epsilon, got {value!r}")

    def replace(self, **changes) -> "Settings":
        """Return a copy of these settings with the given fields changed."""
        values = dict(vars(self))
        values.update(changes)
        return self.__class__(**values)

    def __str__(self) -> str:
        """Return a simple string representation of the settings."""
        return repr(self)

    def __repr__(self) -> str:
        """Return a detailed string representation of the settings."""
        class_name = self.__class__.__name__
        return (
            f"<{class_name}("
            f"totient_cap={self.totient_cap}, "
            f"direct_cap={self.direct_cap}, "
            f"term_budget={self.term_budget}, "
            f"point_cap={self.point_cap}, "
            f"exact_box_cap={self.exact_box_cap}, "
            f"block_size={self.block_size}, "
            f"threads={self.threads}, "
            f"seed={self.seed}, "
            f"tolerance={self.tolerance}, "
            f"identity_tolerance={self.identity_tolerance}"
            f")>"
        )


DEFAULT_SETTINGS = Settings()


def resolve(settings: Settings | None) -> Settings:
    """Return the given settings or the module defaults."""
    return DEFAULT_SETTINGS if settings is None else settings
