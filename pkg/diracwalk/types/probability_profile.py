from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ProbabilityProfile:
    """Per-site probabilities |psi_+|^2 + |psi_-|^2, with the component parts kept for output."""

    plus: np.ndarray
    minus: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.plus + self.minus

    @property
    def sum(self) -> float:
        return float(np.sum(self.plus) + np.sum(self.minus))

    @property
    def n(self) -> int:
        return int(self.plus.size)
