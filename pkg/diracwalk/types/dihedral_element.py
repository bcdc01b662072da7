from dataclasses import dataclass

from diracwalk.exceptions import GroupMismatch, ParameterError

ROTATION = "rotation"
REFLECTION = "reflection"


@dataclass(frozen=True)
class DihedralElement:
    """
    An element of the dihedral group D_n: the rotation R_i or the reflection S_i.

    The product follows R_i R_j = R_{i+j}, R_i S_j = S_{i+j}, S_i R_j = S_{i-j} and S_i S_j = R_{i-j}.
    """

    kind: str
    index: int
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (ROTATION, REFLECTION):
            raise ParameterError(f"unknown dihedral element kind {self.kind!r}")
        if self.n < 1:
            raise GroupMismatch(f"D_n needs n >= 1, got {self.n}")
        object.__setattr__(self, "index", int(self.index) % self.n)

    @classmethod
    def rotation(cls, index: int, n: int) -> "DihedralElement":
        return cls(ROTATION, index, n)

    @classmethod
    def reflection(cls, index: int, n: int) -> "DihedralElement":
        return cls(REFLECTION, index, n)

    @property
    def is_reflection(self) -> bool:
        return self.kind == REFLECTION

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if not isinstance(other, DihedralElement):
            return NotImplemented
        if other.n != self.n:
            raise GroupMismatch(f"cannot multiply elements of D_{self.n} and D_{other.n}")
        if self.is_reflection:
            index = self.index - other.index
        else:
            index = self.index + other.index
        kind = REFLECTION if self.is_reflection != other.is_reflection else ROTATION
        return DihedralElement(kind, index, self.n)

    def __str__(self) -> str:
        return f"{'S' if self.is_reflection else 'R'}_{self.index}"
