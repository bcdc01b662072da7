from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class MomentumBlock:
    k: int
    theta: float
    block: np.ndarray
