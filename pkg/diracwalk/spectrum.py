import logging
from typing import Dict, Iterable, List

import numpy as np

from diracwalk import evolve
from diracwalk.exceptions import DimensionMismatch, ParameterError, SizeError
from diracwalk.types import (
    coin_coefficients,
    evolution_operator,
    momentum_block,
    spectrum_result,
    spinor_field,
    walk_parameters,
)

logger = logging.getLogger(__name__)

# Below this norm a candidate block eigenvector is treated as vanishing
DEGENERACY_TOL = 1e-12


def _block_stack(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    n: int,
) -> tuple:
    if n < 3:
        raise SizeError(f"momentum decomposition needs at least 3 sites, got {n}")
    D, U, L = evolve.coupling_blocks(c, params)
    thetas = 2.0 * np.pi * np.arange(n) / n
    phase = np.exp(-1j * thetas)[:, None, None]
    blocks = D[None, :, :] + U[None, :, :] * phase + L[None, :, :] * phase.conj()
    return thetas, blocks


def momentum_blocks(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    n: int,
) -> List[momentum_block.MomentumBlock]:
    """
    Fourier-decomposes the block-circulant operator into n momentum blocks B(theta_k) = D + U e^{-i theta_k} +
    L e^{+i theta_k} with theta_k = 2 pi k / n.

    A plane wave e^{-i theta_k x} w on the lattice is mapped by the operator to e^{-i theta_k x} B(theta_k) w, so
    the spectrum of the operator is the union of the block spectra.

    Parameters:
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair.
    - n (int): The lattice size, at least 3.

    Returns:
    - List[MomentumBlock]: One block per mode, ordered by k.

    Raises:
    - SizeError: If n < 3.
    """
    thetas, blocks = _block_stack(c, params, n)
    return [
        momentum_block.MomentumBlock(k=k, theta=float(thetas[k]), block=blocks[k])
        for k in range(n)
    ]


def _block_eigenvector(block: np.ndarray, eigenvalue: complex, branch: int) -> np.ndarray:
    a, b = block[0]
    c, d = block[1]
    # Both candidates solve (B - lambda) w = 0; keep the better conditioned one
    first = np.array([b, eigenvalue - a])
    second = np.array([eigenvalue - d, c])
    candidate = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
    norm = np.linalg.norm(candidate)
    if norm < DEGENERACY_TOL:
        # Scalar block: any orthonormal pair works
        candidate = np.eye(2, dtype=np.complex128)[branch]
        norm = 1.0
    return candidate / norm


def spectrum(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    n: int,
    with_eigenvectors: bool = True,
) -> spectrum_result.SpectrumResult:
    """
    Computes all 2n eigenvalues of the evolution operator in closed form, from the trace and determinant of each
    2x2 momentum block, without a general eigensolver.

    Parameters:
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair.
    - n (int): The lattice size, at least 3.
    - with_eigenvectors (bool, optional): Also lift each block eigenvector to a plane-wave eigenvector of the dense
      operator. Defaults to True.

    Returns:
    - SpectrumResult: Eigenvalues ordered by (k, phase angle), the matching mode indices, optional eigenvectors and
      the largest deviation of an eigenvalue modulus from 1.

    Raises:
    - SizeError: If n < 3.
    """
    thetas, blocks = _block_stack(c, params, n)
    half_trace = (blocks[:, 0, 0] + blocks[:, 1, 1]) / 2.0
    determinant = blocks[:, 0, 0] * blocks[:, 1, 1] - blocks[:, 0, 1] * blocks[:, 1, 0]
    root = np.sqrt(half_trace * half_trace - determinant + 0j)
    pairs = np.stack([half_trace + root, half_trace - root], axis=1)
    order = np.argsort(np.angle(pairs), axis=1, kind="stable")
    pairs = np.take_along_axis(pairs, order, axis=1)

    eigenvalues = pairs.reshape(-1)
    modes = np.repeat(np.arange(n), 2)
    deviation = float(np.max(np.abs(np.abs(eigenvalues) - 1.0)))

    eigenvectors = None
    if with_eigenvectors:
        eigenvectors = np.empty((2 * n, 2 * n), dtype=np.complex128)
        sites = np.arange(n)
        for k in range(n):
            wave = np.exp(-1j * thetas[k] * sites) / np.sqrt(n)
            for branch in range(2):
                w = _block_eigenvector(blocks[k], pairs[k, branch], branch)
                eigenvectors[:, 2 * k + branch] = np.kron(wave, w)

    logger.debug(f"Spectrum for R={params.R}, rho={params.rho}, n={n}: max modulus deviation {deviation:.3e}")
    return spectrum_result.SpectrumResult(
        n=n,
        modes=modes,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        max_modulus_deviation=deviation,
    )


def unitarity_residual(op: evolution_operator.EvolutionOperator) -> float:
    """
    Measures how far an operator is from unitary.

    Parameters:
    - op (EvolutionOperator): The operator to check.

    Returns:
    - float: The largest entry magnitude of M M^dagger - I.
    """
    M = op.entries
    return float(np.max(np.abs(M @ M.conj().T - np.eye(M.shape[0]))))


def eigen_residual(
    op: evolution_operator.EvolutionOperator,
    result: spectrum_result.SpectrumResult,
) -> float:
    """Largest ||M v - lambda v|| over the eigenpairs of a spectrum, checked against the dense operator."""
    if result.eigenvectors is None:
        raise ParameterError("the spectrum was computed without eigenvectors")
    if op.n != result.n:
        raise DimensionMismatch(f"operator is for {op.n} sites but the spectrum for {result.n}")
    V = result.eigenvectors
    residual = op.entries @ V - V * result.eigenvalues[None, :]
    return float(np.max(np.linalg.norm(residual, axis=0)))


def power_norms(
    op: evolution_operator.EvolutionOperator,
    field: spinor_field.SpinorField,
    powers: Iterable[int],
) -> Dict[int, float]:
    """Return ||M^t psi|| for each requested t."""
    if op.n != field.n:
        raise DimensionMismatch(f"operator is for {op.n} sites but the field has {field.n}")
    wanted = sorted(set(powers))
    norms: Dict[int, float] = {}
    vector = field.to_vector()
    done = 0
    for power in wanted:
        for _ in range(power - done):
            vector = op.entries @ vector
        done = power
        norms[power] = float(np.linalg.norm(vector))
    return norms
