"""This file contains all kloos specific exceptions."""


class KloosException(Exception):
    """Base class for kloos exceptions."""


class CapacityError(KloosException):
    """Indicates that a configured cap or budget would be exceeded.

    Raised before any work is done, so nothing partial is ever returned.
    """

    def __init__(self, what: str, limit: int, requested: int, *args):
        self.what: str = what
        self.limit: int = limit
        self.requested: int = requested
        super().__init__(f"{what}: requested {requested} exceeds the configured limit {limit}", *args)


class PreconditionError(KloosException, ValueError):
    """Indicates that the arguments of an operation violate its precondition."""


class ConfigurationError(KloosException):
    """Indicates that the settings are invalid."""


class ConfigParseError(ConfigurationError):
    """Indicates a malformed experiment configuration file.

    This exception gets thrown when the config parser was unable to parse a line
    """

    def __init__(self, line_number: int, line: str, *args):
        self.line_number: int = line_number
        self.line: str = line
        super().__init__(*args)
