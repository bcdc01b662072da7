from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from diracwalk.exceptions import GroupMismatch
from diracwalk.types import dihedral_element


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """A finitely supported complex combination of elements of D_n."""

    n: int
    coeffs: Dict[dihedral_element.DihedralElement, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for element in self.coeffs:
            if element.n != self.n:
                raise GroupMismatch(f"{element} belongs to D_{element.n}, not D_{self.n}")

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {dihedral_element.DihedralElement.rotation(0, n): 1 + 0j})

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Iterable[Tuple[dihedral_element.DihedralElement, complex]],
    ) -> "GroupAlgebraElement":
        coeffs: Dict[dihedral_element.DihedralElement, complex] = {}
        for element, value in terms:
            coeffs[element] = coeffs.get(element, 0j) + complex(value)
        return cls(n, coeffs)

    def coefficient(self, element: dihedral_element.DihedralElement) -> complex:
        return self.coeffs.get(element, 0j)

    def support(self, tol: float = 0.0) -> List[dihedral_element.DihedralElement]:
        """Elements whose coefficient magnitude exceeds tol, ordered rotations first, then by index."""
        return sorted(
            (g for g, c in self.coeffs.items() if abs(c) > tol),
            key=lambda g: (g.is_reflection, g.index),
        )

    def _check(self, other: "GroupAlgebraElement") -> None:
        if other.n != self.n:
            raise GroupMismatch(f"cannot combine elements of C[D_{self.n}] and C[D_{other.n}]")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        return GroupAlgebraElement.from_terms(
            self.n, list(self.coeffs.items()) + list(other.coeffs.items())
        )

    def __neg__(self) -> "GroupAlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def scale(self, factor: complex) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {g: factor * c for g, c in self.coeffs.items()})
