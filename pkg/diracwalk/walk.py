import logging
from typing import List

from diracwalk import coin, evolve, lattice, pathsum, spectrum
from diracwalk.exceptions import ParameterError
from diracwalk.types import (
    coin_coefficients,
    evolution_operator,
    path_amplitude,
    residual_report,
    simulation_record,
    spectrum_result,
    walk_parameters,
)

logger = logging.getLogger(__name__)


class DiracWalk:
    def __init__(
        self,
        R: float,
        rho: float,
        swap_roots: bool = False,
    ) -> None:
        # Validate parameters and solve the coin once
        self.params: walk_parameters.WalkParameters = walk_parameters.WalkParameters(R, rho)
        self.swap_roots: bool = swap_roots
        self.coefficients: coin_coefficients.CoinCoefficients = coin.solve_coefficients(
            self.params, swap_roots=swap_roots
        )

    def residuals(
        self,
    ) -> residual_report.ResidualReport:
        """
        Substitutes the solved coefficients into every unitarity relation and reports the residuals.

        Returns:
        - ResidualReport: The per-relation absolute residuals.
        """
        return coin.verify_unitarity_system(self.coefficients, self.params)

    def evolution_matrix(
        self,
        n: int,
    ) -> evolution_operator.EvolutionOperator:
        """
        Builds the dense evolution operator of this walk on n sites.

        Parameters:
        - n (int): The lattice size, at least 3.

        Returns:
        - EvolutionOperator: The 2n x 2n operator.
        """
        return evolve.build_evolution_matrix(n, self.coefficients, self.params)

    def simulate(
        self,
        n: int = 100,
        t: int = 300,
        init_mode: str = "paper",
        engine: str = "stencil",
        tolerance: float = 1e-9,
    ) -> simulation_record.SimulationRecord:
        """
        Simulates the walk from the centred two-site initial state.

        Parameters:
        - n (int, optional): The lattice size. Defaults to 100.
        - t (int, optional): The number of frames, including the initial one. Defaults to 300.
        - init_mode (str, optional): "paper" for amplitudes of 1/4 (total probability 1/4) or "normalized" for a
          unit-probability start. Defaults to "paper".
        - engine (str, optional): "stencil" or "dense". Defaults to "stencil".
        - tolerance (float, optional): The allowed probability drift. Defaults to 1e-9.

        Returns:
        - SimulationRecord: The recorded frames and diagnostics.

        Raises:
        - ParameterError: If init_mode or engine is unknown.
        """
        if init_mode not in ("paper", "normalized"):
            raise ParameterError(f"unknown initial state {init_mode!r}, expected 'paper' or 'normalized'")
        init = lattice.centered_initial_state(n, paper_faithful=init_mode == "paper")
        logger.debug(f"Simulating {self.params} on {n} sites for {t} frames ({init_mode}, {engine})")
        return evolve.simulate(
            self.params,
            n,
            t,
            init,
            engine=engine,
            tolerance=tolerance,
            coefficients=self.coefficients,
        )

    def spectrum(
        self,
        n: int,
        with_eigenvectors: bool = True,
    ) -> spectrum_result.SpectrumResult:
        """
        Computes the exact eigenvalue spectrum of the walk on n sites from its momentum blocks.

        Parameters:
        - n (int): The lattice size, at least 3.
        - with_eigenvectors (bool, optional): Also build the plane-wave eigenvectors. Defaults to True.

        Returns:
        - SpectrumResult: The 2n eigenvalues and diagnostics.
        """
        return spectrum.spectrum(self.coefficients, self.params, n, with_eigenvectors=with_eigenvectors)

    def paths(
        self,
        t: int,
        n: int,
        site: int = 0,
        spin: str = "plus",
    ) -> List[path_amplitude.PathAmplitude]:
        """
        Enumerates every move string of length t from a single excitation and aggregates the amplitudes.

        Parameters:
        - t (int): The number of steps, at most 12.
        - n (int): The lattice size, at least 3.
        - site (int, optional): The starting site. Defaults to 0.
        - spin (str, optional): The starting component, "plus" or "minus". Defaults to "plus".

        Returns:
        - List[PathAmplitude]: The aggregated amplitudes per (site, spin).
        """
        return pathsum.enumerate_paths(self.coefficients, self.params, t, n, site, spin)
