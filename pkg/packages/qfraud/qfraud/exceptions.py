from pathlib import Path


class QFraudError(Exception):
    """Base class for every error raised by qfraud."""


class InvalidArgumentError(QFraudError, ValueError):
    pass


class ShapeError(QFraudError, ValueError):
    def __init__(self, what: str, expected: object, got: object):
        super().__init__(f"{what}: expected shape {expected}, got {got}")
        self.expected = expected
        self.got = got


class InvalidStateError(QFraudError, RuntimeError):
    pass


class EncodingError(QFraudError, ValueError):
    def __init__(self, column: str, value: str):
        super().__init__(f"Unseen category {value!r} in column {column!r}")
        self.column = column
        self.value = value


class DataError(QFraudError):
    """
    Raised for unusable input data. When the failure is tied to a CSV row,
    `row` is the 1-based data row number (header excluded).
    """

    def __init__(self, message: str, source: Path | None = None, row: int | None = None):
        prefix = ""
        if source is not None:
            prefix += f"{source}: "
        if row is not None:
            prefix += f"row {row}: "
        super().__init__(prefix + message)
        self.source = source
        self.row = row


class NumericError(QFraudError, ArithmeticError):
    def __init__(self, epoch: int, batch: int, loss: float):
        super().__init__(
            f"Non-finite loss {loss!r} at epoch {epoch}, batch {batch}"
        )
        self.epoch = epoch
        self.batch = batch
        self.loss = loss


class CheckpointError(QFraudError):
    def __init__(self, path: Path, message: str):
        super().__init__(f"Checkpoint {path}: {message}")
        self.path = path


class CheckpointVersionError(CheckpointError):
    pass


class CheckpointCorruptError(CheckpointError):
    pass


class CheckpointShapeError(CheckpointError):
    pass


class ModelKindMismatchError(CheckpointError):
    pass
