from dataclasses import dataclass


@dataclass(frozen=True)
class CoinCoefficients:
    r1: float
    r2: float
    g1: complex
    g2: complex
    f1: complex
    f2: complex

    @classmethod
    def from_roots(cls, r1: float, r2: float) -> "CoinCoefficients":
        """
        Build the full coefficient set from the two real roots, using g1 = i r1, g2 = r2, f1 = conj(g1)
        and f2 = conj(g2).
        """
        g1 = 1j * r1
        g2 = complex(r2)
        return cls(
            r1=float(r1),
            r2=float(r2),
            g1=g1,
            g2=g2,
            f1=g1.conjugate(),
            f2=g2.conjugate(),
        )
