from dataclasses import dataclass, field
from typing import Dict


@dataclass(frozen=True)
class ResidualReport:
    """Absolute residuals of the unitarity relations, keyed by relation name."""

    full_system: Dict[str, float] = field(default_factory=dict)
    simplified: Dict[str, float] = field(default_factory=dict)
    quadratic: Dict[str, float] = field(default_factory=dict)

    @property
    def residuals(self) -> Dict[str, float]:
        return {**self.full_system, **self.simplified, **self.quadratic}

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)
