import math
from dataclasses import dataclass

from diracwalk.exceptions import DomainError


@dataclass(frozen=True)
class WalkParameters:
    """The physical pair of a walk: R = m * epsilon and the mixing angle rho (radians)."""

    R: float
    rho: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.R) and math.isfinite(self.rho)):
            raise DomainError(f"walk parameters must be finite, got R={self.R!r}, rho={self.rho!r}")
        if not 0.0 <= self.R <= 1.0:
            raise DomainError(f"R must lie in [0, 1], got {self.R!r}")
        # rho lives on the circle
        object.__setattr__(self, "R", float(self.R))
        rho = float(self.rho) % (2.0 * math.pi)
        # Tiny negative angles round up to exactly 2pi
        object.__setattr__(self, "rho", 0.0 if rho >= 2.0 * math.pi else rho)

    @property
    def mass_coupling(self) -> float:
        """R cos(rho), the weight of the on-site spin flip."""
        return self.R * math.cos(self.rho)

    @property
    def hop_coupling(self) -> float:
        """R sin(rho), the weight of the neighbouring spin flip."""
        return self.R * math.sin(self.rho)
