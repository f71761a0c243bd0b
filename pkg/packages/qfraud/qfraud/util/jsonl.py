"""Append-only JSON Lines files."""

import json
import logging
import os
from collections.abc import Iterator
from pathlib import Path
from typing import Any

from filelock import FileLock

from qfraud.util.paths import ensure_dir

logger = logging.getLogger(__name__)


def append_jsonl(path: Path, record: dict[str, Any]) -> bool:
    """
    Append `record` as one line. Writers are serialised by a `<path>.lock`
    FileLock and the line is fsynced before the lock is released.

    Returns False (and logs) when the write fails, so a full disk costs the
    event log but not the training run.
    """
    path = Path(path)
    line = json.dumps(record) + "\n"
    try:
        ensure_dir(path.parent)
        with FileLock(f"{path}.lock"), path.open("a", encoding="utf-8") as f:
            f.write(line)
            f.flush()
            os.fsync(f.fileno())
    except OSError as e:
        logger.critical("Failed to append JSONL record to %s: %s", path, e)
        return False
    return True


def read_jsonl(path: Path) -> Iterator[dict[str, Any]]:
    """Yield one dict per non-empty line; malformed lines are logged and skipped."""
    with Path(path).open(encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as e:
                logger.warning("%s:%d is not valid JSON: %s", path, lineno, e)
