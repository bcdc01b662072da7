from dataclasses import dataclass, fields
from typing import Dict, Tuple

from diracwalk.exceptions import ConfigError

COMMANDS = ("simulate", "spectrum", "coeffs", "paths", "converge")
FORMATS = ("csv", "pgm")
INIT_MODES = ("paper", "normalized")
ENGINES = ("stencil", "dense")
NORMS = ("frame", "global")
SPINS = ("plus", "minus")


@dataclass(frozen=True)
class RunConfig:
    """
    One CLI invocation, validated before dispatch. The defaults reproduce the reference simulations: 100 sites,
    300 frames, the quarter-amplitude initial state and per-frame normalized heatmaps.
    """

    command: str
    R: float = 0.8
    rho: float = 0.0
    n: int = 100
    t: int = 300
    init_mode: str = "paper"
    engine: str = "stencil"
    output_dir: str = "."
    formats: Tuple[str, ...] = FORMATS
    norm: str = "frame"
    swap_roots: bool = False
    site: int = 0
    spin: str = "plus"
    m: float = 1.0
    T: float = 1.0
    base_n: int = 64
    levels: int = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "formats", tuple(self.formats))
        checks = (
            ("command", self.command, COMMANDS),
            ("init_mode", self.init_mode, INIT_MODES),
            ("engine", self.engine, ENGINES),
            ("norm", self.norm, NORMS),
            ("spin", self.spin, SPINS),
        )
        for name, value, allowed in checks:
            if value not in allowed:
                raise ConfigError(f"{name} must be one of {', '.join(allowed)}; got {value!r}")
        unknown = [fmt for fmt in self.formats if fmt not in FORMATS]
        if unknown or not self.formats:
            raise ConfigError(f"formats must be a non-empty subset of {', '.join(FORMATS)}; got {self.formats!r}")
        for name in ("n", "t", "base_n", "levels"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")

    def echo(self) -> Dict[str, str]:
        """The configuration as ordered key/value strings, for the run manifest."""
        echoed: Dict[str, str] = {}
        for spec in fields(self):
            value = getattr(self, spec.name)
            if isinstance(value, tuple):
                value = ",".join(value)
            elif isinstance(value, float):
                value = format(value, ".17g")
            echoed[spec.name] = str(value)
        return echoed
