from dataclasses import dataclass


@dataclass(frozen=True)
class PathAmplitude:
    site: int
    spin: str
    amplitude: complex
    path_count: int
