import os
import tempfile
from pathlib import Path


def ensure_dir(path: Path) -> Path:
    """Create `path` (and parents) if missing and return it."""

    path.mkdir(parents=True, exist_ok=True)
    return path


def atomic_write_bytes(path: Path, data: bytes) -> Path:
    """
    Write `data` to a temp file next to `path`, fsync it and move it into place,
    so readers see either the old file or the complete new one.
    """
    path = Path(path)
    ensure_dir(path.parent)
    tmp_path = None
    try:
        with tempfile.NamedTemporaryFile(
            mode="wb", delete=False, dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
        ) as tmp:
            tmp_path = Path(tmp.name)
            tmp.write(data)
            tmp.flush()
            os.fsync(tmp.fileno())
        os.replace(tmp_path, path)
    except BaseException:
        if tmp_path is not None:
            tmp_path.unlink(missing_ok=True)
        raise
    return path


def atomic_write_text(path: Path, text: str) -> Path:
    return atomic_write_bytes(path, text.encode("utf-8"))
