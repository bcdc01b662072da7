import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from diracwalk import coin, evolve, lattice
from diracwalk.exceptions import ParameterError
from diracwalk.types import coin_coefficients, refinement_study, spinor_field, walk_parameters

logger = logging.getLogger(__name__)

# Pairwise errors at or below this are rounding noise; no order is fitted from them
ERROR_FLOOR = 1e-12


def smooth_field(n: int, length: float = 1.0) -> spinor_field.SpinorField:
    """
    Samples a low-frequency periodic wavepacket on n sites spanning a physical domain of the given length and
    normalizes it to unit total probability.
    """
    x = np.arange(n) * (length / n)
    phase = 2.0 * math.pi * x / length
    plus = 1.0 + 0.5 * np.cos(phase)
    minus = 0.5j * np.sin(phase)
    norm = math.sqrt(float(np.sum(np.abs(plus) ** 2 + np.abs(minus) ** 2)))
    return spinor_field.SpinorField(psi_plus=plus / norm, psi_minus=minus / norm)


def _run_level(
    m: float,
    rho: float,
    T: float,
    length: float,
    n: int,
) -> refinement_study.RefinementLevel:
    epsilon = length / n
    steps = int(round(T / epsilon))
    params = walk_parameters.WalkParameters(m * epsilon, rho)
    c = coin.solve_coefficients(params)
    field = evolve.evolve_field(smooth_field(n, length), c, params, steps)
    profile = lattice.probability_profile(field)
    logger.debug(f"Refinement level eps={epsilon:.3e}, n={n}, t={steps}: total probability {profile.sum:.15f}")
    return refinement_study.RefinementLevel(
        epsilon=epsilon,
        n=n,
        t=steps,
        final_profile=profile.values,
    )


def _fit_order(epsilons: List[float], errors: List[float]) -> tuple:
    x = np.log(np.asarray(epsilons))
    y = np.log(np.asarray(errors))
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum((y - fitted) ** 2)) / total if total > 0.0 else 1.0
    return float(slope), r_squared


def run_refinement(
    m: float,
    rho: float,
    T: float,
    base_n: int,
    num_levels: int,
    length: float = 1.0,
    max_workers: Optional[int] = None,
) -> refinement_study.RefinementStudy:
    """
    Runs a self-convergence study: the same physical problem (mass m, angle rho, final time T, periodic domain of
    the given length) is simulated at successively halved lattice spacings, and consecutive levels are compared.

    Level l uses n = base_n * 2^l sites, epsilon = length / n, R = m * epsilon and round(T / epsilon) steps,
    starting from the smooth wavepacket of smooth_field. Final profiles are compared as densities (probability /
    epsilon) at the physical sites both levels share, i.e. every other site of the finer level, with the discrete
    L2 norm sqrt(epsilon * sum(diff^2)). The order is the least-squares slope of log(error) against log(epsilon).

    Parameters:
    - m (float): The physical mass, at least 0.
    - rho (float): The mixing angle in radians.
    - T (float): The physical final time.
    - base_n (int): The number of sites at the coarsest level.
    - num_levels (int): The number of levels, at least 3.
    - length (float, optional): The physical domain length. Defaults to 1.
    - max_workers (Optional[int], optional): Run the levels on a thread pool of this size. Defaults to None, which
      runs them one after another. Results are aggregated in level order either way.

    Returns:
    - RefinementStudy: The levels, pairwise errors, observed orders per pair, the fitted order and the fit R^2.
      The order is None when every error is at rounding level, as in the massless walk.

    Raises:
    - ParameterError: If num_levels < 3, m < 0, base_n < 3 or R = m * epsilon exceeds 1 at the coarsest level.
    - NoRealCoinError: If some level admits no real coin.
    """
    if num_levels < 3:
        raise ParameterError(f"a refinement study needs at least 3 levels, got {num_levels}")
    if base_n < 3:
        raise ParameterError(f"the coarsest level needs at least 3 sites, got {base_n}")
    if m < 0.0 or T < 0.0 or length <= 0.0:
        raise ParameterError(f"need m >= 0, T >= 0 and length > 0, got m={m}, T={T}, length={length}")
    coarsest_R = m * length / base_n
    if coarsest_R > 1.0:
        raise ParameterError(f"R = m * epsilon = {coarsest_R} exceeds 1 at the coarsest level")

    sizes = [base_n * 2**level for level in range(num_levels)]
    if max_workers:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            levels = list(executor.map(lambda n: _run_level(m, rho, T, length, n), sizes))
    else:
        levels = [_run_level(m, rho, T, length, n) for n in sizes]

    errors: List[float] = []
    for coarse, fine in zip(levels, levels[1:]):
        coarse_density = coarse.final_profile / coarse.epsilon
        fine_density = fine.final_profile[::2] / fine.epsilon
        errors.append(float(math.sqrt(coarse.epsilon * np.sum((coarse_density - fine_density) ** 2))))

    observed: List[float] = []
    order = None
    r_squared = None
    if all(error > ERROR_FLOOR for error in errors):
        observed = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
        order, r_squared = _fit_order([level.epsilon for level in levels[:-1]], errors)
    logger.debug(f"Refinement m={m}, rho={rho}, T={T}: errors {errors}, order {order}")
    return refinement_study.RefinementStudy(
        m=m,
        rho=rho,
        T=T,
        length=length,
        levels=levels,
        pairwise_errors=errors,
        observed_orders=observed,
        estimated_order=order,
        fit_r_squared=r_squared,
    )


def continuum_residual(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    test_field: spinor_field.SpinorField,
) -> float:
    """
    Measures the neighbouring spin-flip term's departure from its on-site value, sup over the lattice of
    |R sin(rho) (psi_+(x - 1) - psi_+(x))|. For a smooth field sampled at spacing epsilon with R = m * epsilon,
    this is O(epsilon^2), so halving epsilon divides it by about 4.

    Parameters:
    - c (CoinCoefficients): The coin solved at this spacing. Its roots do not enter the residual.
    - params (WalkParameters): The (R, rho) pair at this spacing.
    - test_field (SpinorField): The field sampled at this spacing.

    Returns:
    - float: The sup-norm residual. It is exactly 0 for constant fields and for rho = 0.
    """
    plus = test_field.psi_plus
    difference = np.roll(plus, 1) - plus
    return float(np.max(np.abs(params.hop_coupling * difference)))
