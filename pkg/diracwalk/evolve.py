import logging
import math
from typing import Optional, Tuple

import numpy as np

from diracwalk import coin, lattice
from diracwalk.exceptions import ConservationError, DimensionMismatch, ParameterError, SizeError
from diracwalk.types import (
    coin_coefficients,
    evolution_operator,
    simulation_record,
    spinor_field,
    walk_parameters,
)

logger = logging.getLogger(__name__)

ENGINES = ("stencil", "dense")


def coupling_blocks(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Builds the 2x2 blocks of one block row of the evolution operator, with component 0 = psi_- and
    component 1 = psi_+.

    Parameters:
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair.

    Returns:
    - Tuple[np.ndarray, np.ndarray, np.ndarray]: D (on-site), U (coupling site x to x + 1) and L (coupling site x
      to x - 1).
    """
    mass = 1j * params.mass_coupling
    hop = params.hop_coupling
    D = np.array([[c.g1, mass], [mass, c.f1]], dtype=np.complex128)
    U = np.array([[c.g2, 0.0], [-hop, 0.0]], dtype=np.complex128)
    L = np.array([[0.0, hop], [0.0, c.f2]], dtype=np.complex128)
    return D, U, L


def step_stencil(
    field: spinor_field.SpinorField,
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
) -> spinor_field.SpinorField:
    """
    Advances a field by one time step with the finite-difference update, without materializing the operator:

        psi_-'(x) = i R cos(rho) psi_+(x) + R sin(rho) psi_+(x-1) + g1 psi_-(x) + g2 psi_-(x+1)
        psi_+'(x) = i R cos(rho) psi_-(x) - R sin(rho) psi_-(x+1) + f1 psi_+(x) + f2 psi_+(x-1)

    with g1 = i r1, g2 = r2, f1 = -i r1, f2 = r2 and all indices taken mod n. Costs O(n) per step.

    Parameters:
    - field (SpinorField): The field at time t.
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair the coefficients were solved for.

    Returns:
    - SpinorField: The field at time t + 1.
    """
    plus = field.psi_plus
    minus = field.psi_minus
    # np.roll(a, 1)[x] == a[x - 1]
    plus_left = np.roll(plus, 1)
    minus_right = np.roll(minus, -1)
    mass = 1j * params.mass_coupling
    hop = params.hop_coupling
    new_minus = mass * plus + hop * plus_left + c.g1 * minus + c.g2 * minus_right
    new_plus = mass * minus - hop * minus_right + c.f1 * plus + c.f2 * plus_left
    return spinor_field.SpinorField(psi_plus=new_plus, psi_minus=new_minus)


def build_evolution_matrix(
    n: int,
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
) -> evolution_operator.EvolutionOperator:
    """
    Materializes the block-circulant 2n x 2n evolution operator whose action on the interleaved vector
    [psi_-(0), psi_+(0), psi_-(1), ...] equals one stencil step.

    Parameters:
    - n (int): The lattice size. Must be at least 3 so that the D, U and L blocks of a row address distinct sites.
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair.

    Returns:
    - EvolutionOperator: The dense operator together with its D, U and L blocks.

    Raises:
    - SizeError: If n < 3.
    """
    if n < 3:
        raise SizeError(f"the evolution operator needs at least 3 sites, got {n}")
    D, U, L = coupling_blocks(c, params)
    identity = np.eye(n)
    # Row x of the forward shift has its 1 in column x + 1, of the backward shift in column x - 1
    forward = np.roll(identity, 1, axis=1)
    backward = np.roll(identity, -1, axis=1)
    entries = np.kron(identity, D) + np.kron(forward, U) + np.kron(backward, L)
    logger.debug(f"Built {2 * n}x{2 * n} evolution operator for R={params.R}, rho={params.rho}")
    return evolution_operator.EvolutionOperator(n=n, entries=entries, D=D, U=U, L=L)


def step_dense(
    field: spinor_field.SpinorField,
    op: evolution_operator.EvolutionOperator,
) -> spinor_field.SpinorField:
    """
    Advances a field by one time step with a matrix-vector product against the dense operator.

    Parameters:
    - field (SpinorField): The field at time t.
    - op (EvolutionOperator): The operator, built for the same lattice size.

    Returns:
    - SpinorField: The field at time t + 1.

    Raises:
    - DimensionMismatch: If op.n differs from field.n.
    """
    if op.n != field.n:
        raise DimensionMismatch(f"operator is for {op.n} sites but the field has {field.n}")
    return spinor_field.SpinorField.from_vector(op.entries @ field.to_vector())


def evolve_field(
    field: spinor_field.SpinorField,
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    steps: int,
    engine: str = "stencil",
) -> spinor_field.SpinorField:
    """Apply the walk `steps` times with the chosen engine and return the final field."""
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    if engine == "dense":
        op = build_evolution_matrix(field.n, c, params)
        for _ in range(steps):
            field = step_dense(field, op)
        return field
    for _ in range(steps):
        field = step_stencil(field, c, params)
    return field


def simulate(
    params: walk_parameters.WalkParameters,
    n: int,
    t: int,
    init: spinor_field.SpinorField,
    engine: str = "stencil",
    tolerance: float = 1e-9,
    coefficients: Optional[coin_coefficients.CoinCoefficients] = None,
) -> simulation_record.SimulationRecord:
    """
    Runs a full simulation and records t probability frames: frame 0 is the initial state and frame k the state
    after k steps, so t - 1 steps are taken in total.

    Parameters:
    - params (WalkParameters): The (R, rho) pair.
    - n (int): The lattice size; must match init.
    - t (int): The number of frames to record, at least 1.
    - init (SpinorField): The initial field.
    - engine (str, optional): "stencil" (O(n) per step) or "dense" (matrix-vector product, O(n^2) per step).
      Defaults to "stencil".
    - tolerance (float, optional): The largest allowed change of total probability over the run. Defaults to 1e-9.
    - coefficients (Optional[CoinCoefficients], optional): Pre-solved coefficients. Solved from params when omitted.

    Returns:
    - SimulationRecord: The frames, the final field and the conservation drift.

    Raises:
    - SizeError: If t < 1.
    - DimensionMismatch: If init.n differs from n.
    - ParameterError: If engine is unknown.
    - NoRealCoinError: If params admit no real coin.
    - ConservationError: If the drift exceeds tolerance.
    """
    if t < 1:
        raise SizeError(f"a simulation records at least one frame, got t={t}")
    if init.n != n:
        raise DimensionMismatch(f"initial field has {init.n} sites, expected {n}")
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    c = coefficients if coefficients is not None else coin.solve_coefficients(params)
    op = build_evolution_matrix(n, c, params) if engine == "dense" else None

    field = init
    frames = [lattice.probability_profile(field)]
    for _ in range(t - 1):
        field = step_dense(field, op) if op is not None else step_stencil(field, c, params)
        frames.append(lattice.probability_profile(field))

    initial_sum = frames[0].sum
    drift = max(abs(frame.sum - initial_sum) for frame in frames)
    logger.debug(
        f"Simulated R={params.R}, rho={params.rho} on {n} sites for {t} frames with {engine}: drift {drift:.3e}"
    )
    if not math.isfinite(drift) or drift > tolerance:
        raise ConservationError(drift, tolerance)
    return simulation_record.SimulationRecord(
        params=params,
        n=n,
        t=t,
        engine=engine,
        frames=frames,
        final_field=field,
        conservation_drift=drift,
    )
