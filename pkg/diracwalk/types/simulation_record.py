from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from diracwalk.types import probability_profile, spinor_field, walk_parameters


@dataclass(frozen=True, eq=False)
class SimulationRecord:
    params: walk_parameters.WalkParameters
    n: int
    t: int
    engine: str
    frames: List[probability_profile.ProbabilityProfile] = field(default_factory=list)
    final_field: Optional[spinor_field.SpinorField] = None
    conservation_drift: float = 0.0

    def matrix(self) -> np.ndarray:
        """Stack the frame totals into a (t, n) array, time running down the rows."""
        return np.vstack([frame.values for frame in self.frames])
