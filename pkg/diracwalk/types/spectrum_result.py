from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """
    Eigenvalues of the evolution operator, two per momentum mode, ordered by (k, phase angle).

    When requested, eigenvectors are the columns of a 2n x 2n matrix in the interleaved site ordering.
    """

    n: int
    modes: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    max_modulus_deviation: float
