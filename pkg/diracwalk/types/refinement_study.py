from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class RefinementLevel:
    epsilon: float
    n: int
    t: int
    final_profile: np.ndarray


@dataclass(frozen=True, eq=False)
class RefinementStudy:
    """
    Self-convergence study of the walk under epsilon halving.

    pairwise_errors[l] compares level l with level l + 1. estimated_order is the least-squares slope of log(error)
    against log(epsilon), or None when the errors are all at rounding level.
    """

    m: float
    rho: float
    T: float
    length: float
    levels: List[RefinementLevel] = field(default_factory=list)
    pairwise_errors: List[float] = field(default_factory=list)
    observed_orders: List[float] = field(default_factory=list)
    estimated_order: Optional[float] = None
    fit_r_squared: Optional[float] = None
