from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qfraud.exceptions import InvalidArgumentError, ShapeError


class VqcConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(default=10, ge=1, le=16)
    n_layers: int = Field(default=2, ge=1, le=8)

    @property
    def params_shape(self) -> tuple[int, int, int]:
        return (self.n_layers, self.n_qubits, 3)

    @property
    def parameter_count(self) -> int:
        return 3 * self.n_layers * self.n_qubits


@dataclass
class VqcParams:
    """Rotation angles (alpha, beta, gamma) per layer and qubit, in radians."""

    angles: np.ndarray

    def __post_init__(self) -> None:
        self.angles = np.asarray(self.angles, dtype=np.float64)
        if self.angles.ndim != 3 or self.angles.shape[-1] != 3:
            raise ShapeError("VqcParams.angles", "(n_layers, n_qubits, 3)", self.angles.shape)
        if not np.all(np.isfinite(self.angles)):
            raise InvalidArgumentError("VqcParams.angles must be finite")

    def check(self, cfg: VqcConfig) -> None:
        if self.angles.shape != cfg.params_shape:
            raise ShapeError("VqcParams.angles", cfg.params_shape, self.angles.shape)

    @classmethod
    def zeros(cls, cfg: VqcConfig) -> "VqcParams":
        return cls(np.zeros(cfg.params_shape))

    @classmethod
    def random(cls, cfg: VqcConfig, rng: np.random.Generator) -> "VqcParams":
        """Uniform angles in [0, 2pi)."""
        return cls(rng.uniform(0.0, 2.0 * np.pi, size=cfg.params_shape))
