from typing import Optional


class DiracWalkException(Exception):
    """Base exception class for the diracwalk library.

    This class serves as the base exception that can be caught to handle any exceptions raised from this library.
    """

    pass


class DomainError(DiracWalkException):
    """Exception raised when walk parameters lie outside the physical domain (R must be in [0, 1])."""

    pass


class NoRealCoinError(DomainError):
    """Exception raised when the coin equations have no real solution for a given (R, rho) pair.

    This exception class contains the offending parameters and the two radicands of the coin quadratic.
    """

    def __init__(
        self,
        R: float,
        rho: float,
        discriminant: float,
        radicand: Optional[float] = None,
    ):
        """
        Initialize a NoRealCoinError object.

        Args:
            R (float):
                The mass-granularity product R = m * epsilon.

            rho (float):
                The mixing angle in radians, already reduced to [0, 2pi).

            discriminant (float):
                The discriminant 1 - R^2 - R^2 sin(2 rho) of the coin quadratic.

            radicand (Optional[float]):
                The radicand 1 - R^2 + R^2 sin(2 rho) under the root sum, if it was evaluated.

        Attributes:
            R (float):
                The offending mass-granularity product.

            rho (float):
                The offending mixing angle.

            discriminant (float):
                The discriminant value that was found.

            radicand (Optional[float]):
                The root-sum radicand value that was found.

        Raises:
            None

        """
        self.R: float = R
        self.rho: float = rho
        self.discriminant: float = discriminant
        self.radicand: Optional[float] = radicand

        fmt = f"no real coin for (R={R!r}, rho={rho!r}): discriminant {discriminant:.6g}"
        if radicand is not None:
            fmt += f", root-sum radicand {radicand:.6g}"
        fmt += " (real coins need R^2 * (1 + |sin 2rho|) <= 1)"

        super().__init__(fmt)


class SizeError(DiracWalkException):
    """Exception raised when a lattice size is too small or has the wrong parity for an operation."""

    pass


class DimensionMismatch(DiracWalkException):
    """Exception raised when a field and an operator are defined on lattices of different sizes."""

    pass


class BudgetError(DiracWalkException):
    """Exception raised when a brute-force path enumeration would exceed its step cap."""

    pass


class GroupMismatch(DiracWalkException):
    """Exception raised when group algebra elements over different dihedral groups are combined."""

    pass


class ParameterError(DiracWalkException):
    """Exception raised when an operation gets an argument outside the choices or range it accepts, such as an unknown
    engine or spin, a negative step count or a refinement study it cannot run.
    """

    pass


class ConservationError(DiracWalkException):
    """Exception raised when total probability drifts further than the configured tolerance during a simulation."""

    def __init__(self, drift: float, tolerance: float):
        """
        Initialize a ConservationError object.

        Args:
            drift (float):
                The largest absolute change of total probability over the recorded frames.

            tolerance (float):
                The tolerance the drift was checked against.

        """
        self.drift: float = drift
        self.tolerance: float = tolerance
        super().__init__(
            f"probability drift {drift:.3e} exceeds tolerance {tolerance:.3e}"
        )


class ConfigError(DiracWalkException):
    """Exception raised when a run configuration fails validation. The CLI reports it as a usage error."""

    pass
