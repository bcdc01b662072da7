from dataclasses import dataclass

import numpy as np

from diracwalk.exceptions import DimensionMismatch, SizeError


@dataclass(frozen=True, eq=False)
class SpinorField:
    """
    Two-component wavefunction on a periodic lattice of n sites.

    The amplitudes are held as two read-only complex arrays. Site i and site i + n address the same amplitude.
    The flat vector form interleaves the components per site as [psi_-(0), psi_+(0), psi_-(1), psi_+(1), ...],
    which is the ordering used by the dense evolution operator.
    """

    psi_plus: np.ndarray
    psi_minus: np.ndarray

    def __post_init__(self) -> None:
        plus = np.array(self.psi_plus, dtype=np.complex128).reshape(-1)
        minus = np.array(self.psi_minus, dtype=np.complex128).reshape(-1)
        if plus.shape != minus.shape:
            raise DimensionMismatch(
                f"spin components differ in length: {plus.size} != {minus.size}"
            )
        if plus.size < 1:
            raise SizeError("a spinor field needs at least one site")
        plus.flags.writeable = False
        minus.flags.writeable = False
        object.__setattr__(self, "psi_plus", plus)
        object.__setattr__(self, "psi_minus", minus)

    @classmethod
    def from_amplitudes(cls, psi_plus, psi_minus) -> "SpinorField":
        return cls(psi_plus=psi_plus, psi_minus=psi_minus)

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "SpinorField":
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        if vector.size % 2:
            raise DimensionMismatch(f"an interleaved vector needs even length, got {vector.size}")
        return cls(psi_plus=vector[1::2], psi_minus=vector[0::2])

    @property
    def n(self) -> int:
        return int(self.psi_plus.size)

    @property
    def total_probability(self) -> float:
        return float(np.vdot(self.psi_plus, self.psi_plus).real + np.vdot(self.psi_minus, self.psi_minus).real)

    def to_vector(self) -> np.ndarray:
        vector = np.empty(2 * self.n, dtype=np.complex128)
        vector[0::2] = self.psi_minus
        vector[1::2] = self.psi_plus
        return vector

    def at(self, site: int) -> tuple:
        """Return (psi_+, psi_-) at a site, wrapping the index periodically."""
        site %= self.n
        return complex(self.psi_plus[site]), complex(self.psi_minus[site])
