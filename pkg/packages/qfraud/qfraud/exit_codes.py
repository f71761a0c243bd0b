"""
Process exit codes for the `qf` command line.

| Code | Meaning |
|------|---------|
| 0 | success |
| 1 | usage error (bad flags, bad config values) |
| 2 | data error (unreadable CSV, bad split directory, bad checkpoint, unwritable output) |
| 3 | numeric failure (non-finite loss during training) |
"""

from enum import IntEnum

from qfraud.exceptions import (
    CheckpointError,
    DataError,
    EncodingError,
    NumericError,
)


class ExitCode(IntEnum):
    SUCCESS = 0
    USAGE = 1
    DATA = 2
    NUMERIC = 3

    @classmethod
    def from_exception(cls, exc: BaseException | None) -> "ExitCode":
        """
        Map an exception raised by a command to its exit code.

        Data problems are checked first: an EncodingError is a ValueError
        too, but it describes the input file, not the flags. OSError covers
        missing inputs and output paths that cannot be written. Anything else
        (bad arguments, pydantic validation) is a usage error.
        """
        match exc:
            case None:
                return cls.SUCCESS
            case NumericError():
                return cls.NUMERIC
            case DataError() | EncodingError() | CheckpointError() | OSError():
                return cls.DATA
            case _:
                return cls.USAGE
