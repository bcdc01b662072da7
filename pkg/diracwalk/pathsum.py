import logging
import math
from typing import List

import numpy as np

from diracwalk.exceptions import BudgetError, GroupMismatch, ParameterError, SizeError
from diracwalk.types import (
    coin_coefficients,
    dihedral_element,
    group_algebra_element,
    path_amplitude,
    walk_parameters,
)

logger = logging.getLogger(__name__)

# 4^12 strings is the desk-scale ceiling
MAX_ENUMERATION_STEPS = 12
CHUNK_SIZE = 4**8

PLUS = "plus"
MINUS = "minus"
SPINS = (PLUS, MINUS)

# Move digits of a path string
STAY_KEEP, STAY_FLIP, MOVE_KEEP, MOVE_FLIP = range(4)


def _move_tables(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
) -> tuple:
    """Per-spin weights and site offsets of the four moves, indexed [spin, digit]."""
    mass = 1j * params.mass_coupling
    hop = params.hop_coupling
    weights = np.array(
        [
            # psi_+ keeps moving right
            [c.f1, mass, c.f2, hop],
            # psi_- keeps moving left
            [c.g1, mass, c.g2, -hop],
        ],
        dtype=np.complex128,
    )
    offsets = np.array([[0, 0, 1, 1], [0, 0, -1, -1]], dtype=np.int64)
    return weights, offsets


def enumerate_paths(
    c: coin_coefficients.CoinCoefficients,
    params: walk_parameters.WalkParameters,
    t: int,
    n: int,
    init_site: int,
    init_spin: str,
) -> List[path_amplitude.PathAmplitude]:
    """
    Expands t steps of the walk as a sum over all 4^t move strings. Each digit of a string picks one of stay-keep,
    stay-flip, move-keep and move-flip; the amplitude of a string is the product of the per-step weights, which
    differ in sign between the two spin components. Amplitudes and string counts are aggregated per (site, spin).

    The string space is processed in chunks of 4^8 with numpy, always in increasing string order, so the summation
    order is fixed.

    Parameters:
    - c (CoinCoefficients): The coin coefficients.
    - params (WalkParameters): The (R, rho) pair.
    - t (int): The number of steps, between 0 and 12.
    - n (int): The lattice size, at least 3.
    - init_site (int): The starting site (taken mod n).
    - init_spin (str): The starting component, "plus" or "minus".

    Returns:
    - List[PathAmplitude]: One entry per reachable (site, spin), ordered by site then spin. Strings of zero weight
      still count towards path_count, so the counts total 4^t.

    Raises:
    - BudgetError: If t exceeds the enumeration cap.
    - SizeError: If n < 3.
    - ParameterError: If t is negative or init_spin is unknown.
    """
    if t > MAX_ENUMERATION_STEPS:
        raise BudgetError(f"path enumeration is capped at t={MAX_ENUMERATION_STEPS}, got t={t}")
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    if n < 3:
        raise SizeError(f"path enumeration needs at least 3 sites, got {n}")
    if init_spin not in SPINS:
        raise ParameterError(f"unknown spin {init_spin!r}, expected one of {SPINS}")

    weights, offsets = _move_tables(c, params)
    amplitudes = np.zeros((n, 2), dtype=np.complex128)
    counts = np.zeros((n, 2), dtype=np.int64)
    total = 4**t
    powers = 4 ** np.arange(t - 1, -1, -1, dtype=np.int64)

    for start in range(0, total, CHUNK_SIZE):
        codes = np.arange(start, min(start + CHUNK_SIZE, total), dtype=np.int64)
        site = np.full(codes.size, init_site % n, dtype=np.int64)
        spin = np.full(codes.size, SPINS.index(init_spin), dtype=np.int64)
        amplitude = np.ones(codes.size, dtype=np.complex128)
        # First step is the most significant digit
        for power in powers:
            digit = (codes // power) % 4
            amplitude = amplitude * weights[spin, digit]
            site = (site + offsets[spin, digit]) % n
            spin = spin ^ (digit & 1)
        np.add.at(amplitudes, (site, spin), amplitude)
        np.add.at(counts, (site, spin), 1)

    logger.debug(f"Enumerated {total} paths of length {t} on {n} sites from ({init_site}, {init_spin})")
    return [
        path_amplitude.PathAmplitude(
            site=site,
            spin=SPINS[spin],
            amplitude=complex(amplitudes[site, spin]),
            path_count=int(counts[site, spin]),
        )
        for site in range(n)
        for spin in range(2)
        if counts[site, spin] > 0
    ]


def dihedral_group(n: int) -> List[dihedral_element.DihedralElement]:
    """All 2n elements of D_n, rotations first."""
    return [dihedral_element.DihedralElement.rotation(i, n) for i in range(n)] + [
        dihedral_element.DihedralElement.reflection(i, n) for i in range(n)
    ]


def algebra_multiply(
    a: group_algebra_element.GroupAlgebraElement,
    b: group_algebra_element.GroupAlgebraElement,
) -> group_algebra_element.GroupAlgebraElement:
    """
    Multiplies two elements of the group algebra C[D_n] by bilinear extension of the dihedral product.

    Parameters:
    - a (GroupAlgebraElement): The left factor.
    - b (GroupAlgebraElement): The right factor.

    Returns:
    - GroupAlgebraElement: The product, keeping zero coefficients that arise from cancellation.

    Raises:
    - GroupMismatch: If a and b are over different n.
    """
    if a.n != b.n:
        raise GroupMismatch(f"cannot multiply elements of C[D_{a.n}] and C[D_{b.n}]")
    terms = [
        (g * h, x * y)
        for g, x in a.coeffs.items()
        for h, y in b.coeffs.items()
    ]
    return group_algebra_element.GroupAlgebraElement.from_terms(a.n, terms)


def algebra_power(
    a0: complex,
    a1: complex,
    b0: complex,
    b1: complex,
    t: int,
    n: int,
) -> group_algebra_element.GroupAlgebraElement:
    """
    Expands the generating function (a0 R_0 + a1 R_1 + b0 S_0 + b1 S_1)^t in C[D_n] by repeated multiplication.

    Parameters:
    - a0, a1, b0, b1 (complex): The coefficients of R_0, R_1, S_0 and S_1.
    - t (int): The power, at least 0. t = 0 gives the identity R_0.
    - n (int): The dihedral group parameter.

    Returns:
    - GroupAlgebraElement: The expanded power.
    """
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    DihedralElement = dihedral_element.DihedralElement
    generator = group_algebra_element.GroupAlgebraElement.from_terms(
        n,
        [
            (DihedralElement.rotation(0, n), a0),
            (DihedralElement.rotation(1, n), a1),
            (DihedralElement.reflection(0, n), b0),
            (DihedralElement.reflection(1, n), b1),
        ],
    )
    result = group_algebra_element.GroupAlgebraElement.identity(n)
    for _ in range(t):
        result = algebra_multiply(result, generator)
    return result


def dihedral_representation(g: dihedral_element.DihedralElement, n: int) -> np.ndarray:
    """
    Maps a dihedral element to its real 2x2 matrix: R_k to the rotation by 2 pi k / n and S_k to the reflection
    [[cos, sin], [sin, -cos]] of the same angle.
    """
    if g.n != n:
        raise GroupMismatch(f"{g} belongs to D_{g.n}, not D_{n}")
    angle = 2.0 * math.pi * g.index / n
    cos, sin = math.cos(angle), math.sin(angle)
    if g.is_reflection:
        return np.array([[cos, sin], [sin, -cos]])
    return np.array([[cos, -sin], [sin, cos]])


def represent(a: group_algebra_element.GroupAlgebraElement) -> np.ndarray:
    """Linear extension of the 2x2 representation to the group algebra."""
    matrix = np.zeros((2, 2), dtype=np.complex128)
    for g, coefficient in a.coeffs.items():
        matrix += coefficient * dihedral_representation(g, a.n)
    return matrix
