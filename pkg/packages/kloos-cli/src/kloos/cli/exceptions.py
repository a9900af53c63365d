"""This file contains the exceptions of the command line interface."""

from kloos.core.exceptions import KloosException


class AcceptanceFailure(KloosException):
    """Indicates that at least one acceptance check failed.

    The report document is still written before this exception is raised.
    """

    def __init__(self, failed: list[str], *args):
        self.failed: list[str] = failed
        super().__init__(f"Acceptance checks failed: {', '.join(failed)}", *args)
