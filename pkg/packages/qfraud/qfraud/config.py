import logging
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings

from qfraud.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)


class QFraudSettings(BaseSettings):
    log_level: str = "INFO"
    artifacts_dir: Path = Path("artifacts")

    # Upper bound on complex amplitudes held by one batched circuit evaluation.
    max_batch_amplitudes: int = Field(default=2**22, ge=2)
    max_qubits: int = Field(default=16, ge=1, le=16)

    model_config = {
        "env_prefix": "QFRAUD_",
        "env_file": ".env",
        "extra": "ignore",
    }


def load_settings() -> QFraudSettings:
    return QFraudSettings()


def read_config_file(path: Path) -> dict[str, str]:
    """
    Parse a plain-text `key=value` config file.

    - Blank lines and lines starting with `#` are ignored
    - Keys may use dashes or underscores (`batch-size` == `batch_size`)
    - Values are returned as strings; pydantic coerces them later
    """
    values: dict[str, str] = {}

    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue

            if "=" not in line:
                raise InvalidArgumentError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )

            key, value = line.split("=", 1)
            key = key.strip().replace("-", "_")
            if not key:
                raise InvalidArgumentError(f"{path}:{lineno}: empty key")

            values[key] = value.strip()

    logger.debug("Read %d config values from %s", len(values), path)
    return values
