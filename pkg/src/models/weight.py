from dataclasses import dataclass
from enum import Enum

import numpy as np


class Definiteness(Enum):
    DEFINITE = "definite"
    SEMIDEFINITE = "semidefinite"
    ZERO = "zero"


@dataclass(frozen=True)
class SignClass:
    """Matrix-valued sign of a symmetric weight: +1 / -1 for positive / negative (semi)definite, 0 for zero."""
    sign: int
    definiteness: Definiteness

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if (self.sign == 0) != (self.definiteness is Definiteness.ZERO):
            raise ValueError("sign is 0 exactly when the weight is zero")

    @property
    def is_definite(self) -> bool:
        return self.definiteness is Definiteness.DEFINITE


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """A symmetric d x d edge weight, stored signed. The array is read-only."""
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"weight must be a square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def scaled(self, factor: float) -> "WeightMatrix":
        return WeightMatrix(factor * self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"WeightMatrix({self.entries.tolist()})"
