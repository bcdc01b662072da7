import logging
from typing import Optional

import numpy as np

from diracwalk.exceptions import SizeError
from diracwalk.types import spinor_field
from diracwalk.types.probability_profile import ProbabilityProfile

logger = logging.getLogger(__name__)


def zero_field(n: int) -> spinor_field.SpinorField:
    """
    Creates a spinor field of n sites with every amplitude set to zero.

    Parameters:
    - n (int): The lattice size. The stencil couples each site to two distinct neighbours, so n must be at least 2.

    Returns:
    - SpinorField: The zero field.

    Raises:
    - SizeError: If n < 2.
    """
    if n < 2:
        raise SizeError(f"a lattice needs at least 2 sites, got {n}")
    return spinor_field.SpinorField(
        psi_plus=np.zeros(n, dtype=np.complex128),
        psi_minus=np.zeros(n, dtype=np.complex128),
    )


def set_amplitude(
    field: spinor_field.SpinorField,
    site: int,
    psi_plus: complex,
    psi_minus: complex,
) -> spinor_field.SpinorField:
    """Return a copy of field with both components replaced at one (periodic) site."""
    site %= field.n
    plus = field.psi_plus.copy()
    minus = field.psi_minus.copy()
    plus[site] = psi_plus
    minus[site] = psi_minus
    return spinor_field.SpinorField(psi_plus=plus, psi_minus=minus)


def centered_initial_state(n: int, paper_faithful: bool = False) -> spinor_field.SpinorField:
    """
    Creates the two-site starting state used by the reference simulations: equal amplitudes on both spin
    components at the two sites straddling the lattice centre, 0-based sites n/2 - 1 and n/2.

    Parameters:
    - n (int): The lattice size, even and at least 4.
    - paper_faithful (bool, optional): Use amplitude 1/4 everywhere, for a total probability of 1/4. Defaults to
      False, which uses amplitude 1/2 for a total probability of 1.

    Returns:
    - SpinorField: The initial state.

    Raises:
    - SizeError: If n is odd or smaller than 4.
    """
    if n < 4 or n % 2:
        raise SizeError(f"the centred initial state needs an even lattice of at least 4 sites, got {n}")
    amplitude = 0.25 if paper_faithful else 0.5
    field = zero_field(n)
    for site in (n // 2 - 1, n // 2):
        field = set_amplitude(field, site, amplitude, amplitude)
    logger.debug(f"Centred initial state on {n} sites with amplitude {amplitude}")
    return field


def random_field(n: int, seed: int, normalize: bool = True) -> spinor_field.SpinorField:
    """Deterministic pseudo-random complex field, unit-normalized unless told otherwise."""
    if n < 2:
        raise SizeError(f"a lattice needs at least 2 sites, got {n}")
    rng = np.random.default_rng(seed)
    values = rng.standard_normal((2, n)) + 1j * rng.standard_normal((2, n))
    if normalize:
        values /= np.linalg.norm(values)
    return spinor_field.SpinorField(psi_plus=values[0], psi_minus=values[1])


def probability_profile(field: spinor_field.SpinorField) -> ProbabilityProfile:
    """
    Computes the per-site probability |psi_+|^2 + |psi_-|^2, keeping the two component contributions separately.

    Parameters:
    - field (SpinorField): The field to measure.

    Returns:
    - ProbabilityProfile: The profile; its sum equals the squared 2-norm of the amplitudes.
    """
    plus = np.abs(field.psi_plus) ** 2
    minus = np.abs(field.psi_minus) ** 2
    return ProbabilityProfile(plus=plus, minus=minus)


def total_variation_to_uniform(profile: ProbabilityProfile) -> float:
    """
    Total-variation distance between the normalized profile and the uniform distribution on the lattice. A zero
    profile has no distribution to compare and reports 0.
    """
    values = profile.values
    total = values.sum()
    if total <= 0.0:
        return 0.0
    return float(0.5 * np.abs(values / total - 1.0 / values.size).sum())


def mirror_asymmetry(profile: ProbabilityProfile, scale: Optional[float] = None) -> float:
    """
    Largest difference between a profile and its reflection x -> n - 1 - x, as a fraction of scale (the profile
    maximum by default).
    """
    values = profile.values
    if scale is None:
        scale = float(values.max())
    if scale <= 0.0:
        return 0.0
    return float(np.abs(values - values[::-1]).max() / scale)
