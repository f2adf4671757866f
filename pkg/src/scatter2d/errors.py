"""Exception types shared across the package."""


class Scatter2dError(Exception):
    """Base class for package errors."""


class ConfigError(Scatter2dError):
    """Invalid or inconsistent run configuration."""


class SolverError(Scatter2dError):
    """Linear system assembly or elimination failed.

    block_row, when set, is the index of the radial block row where the
    failure was detected (e.g. a singular pivot group).
    """

    def __init__(self, message: str, block_row: int | None = None):
        super().__init__(message)
        self.block_row = block_row


class OutputError(Scatter2dError):
    """Could not write a requested output file."""


class RemoteError(Scatter2dError):
    """A server-mode request failed or returned an unusable response."""
