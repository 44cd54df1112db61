"""Exception types shared across the toolkit.

Every error carries a ``kind`` token so front ends (service, CLI) can map
failures to HTTP status payloads and process exit codes without string
matching on messages.
"""


class PathLossError(Exception):
    """Base class for all toolkit errors."""

    kind = "error"


class DataError(PathLossError):
    """Invalid input data: malformed CSV, bad tokens, empty selections."""

    kind = "input"


class UnidentifiableError(PathLossError):
    """The requested fit has no unique solution on the given dataset."""

    kind = "unidentifiable"
