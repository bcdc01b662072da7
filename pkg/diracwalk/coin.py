import logging
import math

from diracwalk.exceptions import NoRealCoinError
from diracwalk.types import coin_coefficients, residual_report, walk_parameters

logger = logging.getLogger(__name__)

# Radicands this close below zero are rounding noise at the edge of the real-coin region
RADICAND_CLAMP = 1e-14


def _radicands(params: walk_parameters.WalkParameters) -> tuple:
    R2 = params.R * params.R
    sin2 = math.sin(2.0 * params.rho)
    radicand = 1.0 - R2 + R2 * sin2
    discriminant = 1.0 - R2 - R2 * sin2
    return radicand, discriminant


def _clamp(value: float) -> float:
    if -RADICAND_CLAMP < value < 0.0:
        return 0.0
    return value


def has_real_coin(R: float, rho: float) -> bool:
    """
    Report whether (R, rho) admits real coin roots, i.e. whether R^2 (1 + |sin 2rho|) <= 1 up to the clamping
    tolerance.
    """
    if not 0.0 <= R <= 1.0:
        return False
    radicand, discriminant = _radicands(walk_parameters.WalkParameters(R, rho))
    return _clamp(radicand) >= 0.0 and _clamp(discriminant) >= 0.0


def solve_coefficients(
    params: walk_parameters.WalkParameters,
    swap_roots: bool = False,
) -> coin_coefficients.CoinCoefficients:
    """
    Solves the coin quadratic x^2 - S x + P = 0 for the real roots r1 and r2, where S = sqrt(1 - R^2 + R^2 sin 2rho)
    and P = R^2 sin(2 rho) / 2, and derives g1 = i r1, g2 = r2, f1 = conj(g1), f2 = conj(g2).

    The roots satisfy r1 r2 = R^2 sin(rho) cos(rho) and r1^2 + r2^2 = 1 - R^2. The larger root is computed from the
    quadratic formula and the smaller from the product P, which keeps rho = 0 exact: r1 = 0 and r2 = sqrt(1 - R^2).

    Parameters:
    - params (WalkParameters): The (R, rho) pair. R outside [0, 1] is already rejected by WalkParameters with a
      DomainError.
    - swap_roots (bool, optional): Assign the larger root to r1 instead of r2. The swapped walk is also unitary.
      Defaults to False, which orders r1 <= r2.

    Returns:
    - CoinCoefficients: The solved coefficients.

    Raises:
    - NoRealCoinError: If either radicand is negative, i.e. R^2 (1 + |sin 2rho|) > 1.
    """
    radicand, discriminant = _radicands(params)
    radicand = _clamp(radicand)
    discriminant = _clamp(discriminant)
    if radicand < 0.0 or discriminant < 0.0:
        raise NoRealCoinError(params.R, params.rho, discriminant, radicand)

    root_sum = math.sqrt(radicand)
    product = params.R * params.R * math.sin(2.0 * params.rho) / 2.0
    larger = (root_sum + math.sqrt(discriminant)) / 2.0
    smaller = product / larger if larger > 0.0 else 0.0
    # A clamped discriminant can leave the pair one rounding step out of order
    smaller, larger = min(smaller, larger), max(smaller, larger)
    r1, r2 = (larger, smaller) if swap_roots else (smaller, larger)

    logger.debug(f"Solved coin for R={params.R}, rho={params.rho}: r1={r1}, r2={r2}")
    return coin_coefficients.CoinCoefficients.from_roots(r1, r2)


def verify_unitarity_system(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
) -> residual_report.ResidualReport:
    """
    Substitutes concrete coefficients into the unitarity conditions of the transition matrix and reports the
    absolute residual of each relation. This is a report, not a guard: it never raises.

    Parameters:
    - c (CoinCoefficients): The coefficients to check. They need not be consistent with each other.
    - params (WalkParameters): The (R, rho) pair the coefficients were produced for.

    Returns:
    - ResidualReport: The eight relations of the full system, the four simplified relations and the two quadratic
      identities, each as an absolute residual.
    """
    R = params.R
    cos = math.cos(params.rho)
    sin = math.sin(params.rho)
    g1, g2, f1, f2 = c.g1, c.g2, c.f1, c.f2
    g1c, g2c, f1c, f2c = g1.conjugate(), g2.conjugate(), f1.conjugate(), f2.conjugate()

    full_system = {
        "row_norm_g": abs(g1 * g1c + g2 * g2c + R * R * cos * cos + R * R * sin * sin - 1.0),
        "cross_f1_g1": abs(-1j * f1 * R * cos + f2 * R * sin + 1j * R * g1c * cos - R * g2c * sin),
        "cross_g1_g2": abs(g1 * g2c - 1j * R * R * cos * sin),
        "cross_f2_g2": abs(-1j * f2 * R * cos + 1j * R * g2c * cos),
        "cross_g2_g1": abs(g2 * g1c + 1j * R * R * cos * sin),
        "cross_f1_sin": abs(f1 * R * sin - R * g1c * sin),
        "cross_g_f": abs(-1j * g1 * R * cos - g2 * R * sin + 1j * R * f1c * cos + R * f2c * sin),
        "row_norm_f": abs(f1 * f1c + f2 * f2c + R * R * cos * cos + R * R * sin * sin - 1.0),
    }
    simplified = {
        "f1_conj_g1": abs(f1 - g1c),
        "f2_conj_g2": abs(f2 - g2c),
        "g2_conj_g1": abs(g2 * g1c + 1j * R * R * sin * cos),
        "norm_g": abs(abs(g1) ** 2 + abs(g2) ** 2 + R * R - 1.0),
    }
    quadratic = {
        "root_product": abs(c.r1 * c.r2 - R * R * sin * cos),
        "root_squares": abs(c.r1 * c.r1 + c.r2 * c.r2 - (1.0 - R * R)),
    }
    report = residual_report.ResidualReport(
        full_system=full_system,
        simplified=simplified,
        quadratic=quadratic,
    )
    logger.debug(f"Unitarity residuals for R={R}, rho={params.rho}: max {report.max_residual:.3e}")
    return report
