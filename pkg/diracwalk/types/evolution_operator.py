from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """
    Dense 2n x 2n one-step operator of the walk.

    Row block x holds D at block column x, U at block column x + 1 and L at block column x - 1 (mod n). Inside a
    block, component 0 is psi_- and component 1 is psi_+.
    """

    n: int
    entries: np.ndarray
    D: np.ndarray
    U: np.ndarray
    L: np.ndarray

    def block(self, row: int, column: int) -> np.ndarray:
        row %= self.n
        column %= self.n
        return self.entries[2 * row : 2 * row + 2, 2 * column : 2 * column + 2]
