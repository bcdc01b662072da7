import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from diracwalk import __version__, convergence, lattice, spectrum
from diracwalk.exceptions import ConfigError, DiracWalkException, ParameterError
from diracwalk.types import run_config, simulation_record
from diracwalk.walk import DiracWalk

logger = logging.getLogger(__name__)

FRAMES_HEADER = ["t", "x", "prob_plus", "prob_minus", "prob_total"]
PGM_MAXVAL = 255
PGM_VALUES_PER_LINE = 16


def _num(value: float) -> str:
    # 17 significant digits round-trip a double exactly
    return format(float(value), ".17g")


def write_heatmap(
    record: simulation_record.SimulationRecord,
    path: Path,
    norm: str = "frame",
) -> Path:
    """
    Writes the probability frames of a simulation as a plain (P2) grayscale image, one image row per frame with
    time increasing downwards and one column per site.

    Parameters:
    - record (SimulationRecord): A record with at least one frame.
    - path (Path): The destination file.
    - norm (str, optional): "frame" scales each row by its own maximum, "global" scales every row by the maximum
      over the whole record. A zero maximum gives a black row. Defaults to "frame".

    Returns:
    - Path: The path written.

    Raises:
    - ParameterError: If the record has no frames or norm is unknown.
    - OSError: If the file cannot be written.
    """
    if not record.frames:
        raise ParameterError("cannot draw a heatmap of an empty record")
    data = record.matrix()
    if norm == "frame":
        scale = data.max(axis=1, keepdims=True)
    elif norm == "global":
        scale = np.full((data.shape[0], 1), data.max())
    else:
        raise ParameterError(f"unknown normalization {norm!r}, expected 'frame' or 'global'")
    safe = np.where(scale > 0.0, scale, 1.0)
    pixels = np.where(scale > 0.0, np.rint(PGM_MAXVAL * data / safe), 0.0).astype(int)

    rows, columns = pixels.shape
    lines = ["P2", f"{columns} {rows}", str(PGM_MAXVAL)]
    for row in pixels:
        for start in range(0, columns, PGM_VALUES_PER_LINE):
            lines.append(" ".join(str(v) for v in row[start : start + PGM_VALUES_PER_LINE]))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    logger.debug(f"Wrote {columns}x{rows} heatmap to {path}")
    return path


def write_frames_csv(record: simulation_record.SimulationRecord, path: Path) -> Path:
    """Write one row per (t, x) with the per-component and total probabilities."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(FRAMES_HEADER)
        for t, frame in enumerate(record.frames):
            for x in range(frame.n):
                writer.writerow(
                    [t, x, _num(frame.plus[x]), _num(frame.minus[x]), _num(frame.plus[x] + frame.minus[x])]
                )
    return path


def _write_rows(path: Path, header: List[str], rows: List[list]) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_manifest(path: Path, config: run_config.RunConfig, summary: Dict[str, str]) -> Path:
    """Write the config echo and summary metrics as plain `key: value` lines."""
    lines = [f"diracwalk {__version__}", "[config]"]
    lines += [f"{key}: {value}" for key, value in config.echo().items()]
    lines.append("[summary]")
    lines += [f"{key}: {value}" for key, value in summary.items()]
    path.write_text("\n".join(lines) + "\n")
    return path


def _run_simulate(config: run_config.RunConfig, out: Path) -> Dict[str, str]:
    walk = DiracWalk(config.R, config.rho, swap_roots=config.swap_roots)
    record = walk.simulate(n=config.n, t=config.t, init_mode=config.init_mode, engine=config.engine)
    if "csv" in config.formats:
        write_frames_csv(record, out / "frames.csv")
    if "pgm" in config.formats:
        write_heatmap(record, out / "heatmap.pgm", norm=config.norm)
    last = record.frames[-1]
    print(
        f"simulate R={config.R} rho={config.rho} n={config.n} t={config.t}: "
        f"conservation drift {record.conservation_drift:.3e}"
    )
    return {
        "conservation_drift": _num(record.conservation_drift),
        "final_total_probability": _num(last.sum),
        "final_tv_to_uniform": _num(lattice.total_variation_to_uniform(last)),
        "max_mirror_asymmetry": _num(max(lattice.mirror_asymmetry(frame) for frame in record.frames)),
    }


def _run_spectrum(config: run_config.RunConfig, out: Path) -> Dict[str, str]:
    walk = DiracWalk(config.R, config.rho, swap_roots=config.swap_roots)
    result = walk.spectrum(config.n)
    residual = spectrum.unitarity_residual(walk.evolution_matrix(config.n))
    if "csv" in config.formats:
        rows = []
        for index, (k, value) in enumerate(zip(result.modes, result.eigenvalues)):
            theta = 2.0 * np.pi * k / config.n
            rows.append([int(k), _num(theta), index % 2, _num(value.real), _num(value.imag), _num(abs(value))])
        _write_rows(out / "spectrum.csv", ["k", "theta", "branch", "real", "imag", "modulus"], rows)
    print(
        f"spectrum R={config.R} rho={config.rho} n={config.n}: {result.eigenvalues.size} eigenvalues, "
        f"max modulus deviation {result.max_modulus_deviation:.3e}, unitarity residual {residual:.3e}"
    )
    return {
        "eigenvalues": str(result.eigenvalues.size),
        "max_modulus_deviation": _num(result.max_modulus_deviation),
        "unitarity_residual": _num(residual),
    }


def _run_coeffs(config: run_config.RunConfig, out: Path) -> Dict[str, str]:
    walk = DiracWalk(config.R, config.rho, swap_roots=config.swap_roots)
    c = walk.coefficients
    report = walk.residuals()
    lines = [f"{name} = {_num(getattr(c, name))}" for name in ("r1", "r2")]
    lines += [f"{name} = {getattr(c, name)!r}" for name in ("g1", "g2", "f1", "f2")]
    lines += [f"residual {name} = {value:.3e}" for name, value in report.residuals.items()]
    text = "\n".join(lines)
    print(text)
    (out / "coefficients.txt").write_text(text + "\n")
    print(f"coeffs R={config.R} rho={config.rho}: max residual {report.max_residual:.3e}")
    return {"r1": _num(c.r1), "r2": _num(c.r2), "max_residual": _num(report.max_residual)}


def _run_paths(config: run_config.RunConfig, out: Path) -> Dict[str, str]:
    walk = DiracWalk(config.R, config.rho, swap_roots=config.swap_roots)
    outcomes = walk.paths(config.t, config.n, site=config.site, spin=config.spin)
    if "csv" in config.formats:
        rows = [
            [p.site, p.spin, _num(p.amplitude.real), _num(p.amplitude.imag), p.path_count]
            for p in outcomes
        ]
        _write_rows(out / "paths.csv", ["site", "spin", "amplitude_real", "amplitude_imag", "path_count"], rows)
    total = sum(p.path_count for p in outcomes)
    print(
        f"paths R={config.R} rho={config.rho} n={config.n} t={config.t}: "
        f"{len(outcomes)} outcomes from {total} strings"
    )
    return {"outcomes": str(len(outcomes)), "strings": str(total)}


def _run_converge(config: run_config.RunConfig, out: Path) -> Dict[str, str]:
    study = convergence.run_refinement(config.m, config.rho, config.T, config.base_n, config.levels)
    if "csv" in config.formats:
        rows = []
        for index, error in enumerate(study.pairwise_errors):
            level = study.levels[index]
            # The observed order of a pair of errors is reported on the finer one
            observed = _num(study.observed_orders[index - 1]) if index > 0 and study.observed_orders else ""
            rows.append([_num(level.epsilon), level.n, level.t, _num(error), observed])
        _write_rows(out / "convergence.csv", ["epsilon", "n", "t", "error", "observed_order"], rows)
    order = "n/a" if study.estimated_order is None else f"{study.estimated_order:.4f}"
    print(f"converge m={config.m} rho={config.rho} T={config.T}: fitted order {order}")
    return {
        "estimated_order": "n/a" if study.estimated_order is None else _num(study.estimated_order),
        "fit_r_squared": "n/a" if study.fit_r_squared is None else _num(study.fit_r_squared),
    }


COMMAND_HANDLERS = {
    "simulate": _run_simulate,
    "spectrum": _run_spectrum,
    "coeffs": _run_coeffs,
    "paths": _run_paths,
    "converge": _run_converge,
}


def run(config: run_config.RunConfig) -> int:
    """
    Executes one validated command, writes its files into the output directory and prints a one-line summary.

    Parameters:
    - config (RunConfig): The validated configuration.

    Returns:
    - int: 0 on success, 1 when the library rejects the parameters or a file cannot be written. The diagnostic goes
      to stderr.
    """
    out = Path(config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        summary = COMMAND_HANDLERS[config.command](config, out)
        write_manifest(out / "manifest.txt", config, summary)
    except DiracWalkException as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: cannot write {e.filename or out}: {e.strerror}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--R", type=float, default=0.8, help="mass-granularity product R = m * epsilon, in [0, 1]")
    common.add_argument("--rho", type=float, default=0.0, help="mixing angle in radians")
    common.add_argument("--n", type=int, default=100, help="lattice size")
    common.add_argument("--output-dir", default=".", help="directory for output files")
    common.add_argument("--formats", default="csv,pgm", help="comma-separated subset of csv,pgm")
    common.add_argument("--swap-roots", action="store_true", help="assign the larger coin root to r1")
    common.add_argument("--verbose", action="store_true", help="log debug messages to stderr")

    parser = argparse.ArgumentParser(
        prog="diracwalk",
        description="Simulate and verify the unitary quantum walk of the generalized Dirac equation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", parents=[common], help="run a simulation and draw its heatmap")
    simulate.add_argument("--t", type=int, default=300, help="number of frames, including the initial one")
    simulate.add_argument("--init", dest="init_mode", choices=run_config.INIT_MODES, default="paper")
    simulate.add_argument("--engine", choices=run_config.ENGINES, default="stencil")
    simulate.add_argument("--norm", choices=run_config.NORMS, default="frame")

    commands.add_parser("spectrum", parents=[common], help="exact eigenvalues from momentum blocks")
    commands.add_parser("coeffs", parents=[common], help="solve the coin and print unitarity residuals")

    paths = commands.add_parser("paths", parents=[common], help="brute-force path enumeration")
    paths.add_argument("--t", type=int, default=4, help="number of steps, at most 12")
    paths.add_argument("--site", type=int, default=0, help="starting site")
    paths.add_argument("--spin", choices=run_config.SPINS, default="plus", help="starting component")

    converge = commands.add_parser("converge", parents=[common], help="self-convergence order study")
    converge.add_argument("--m", type=float, default=1.0, help="physical mass")
    converge.add_argument("--T", type=float, default=1.0, help="physical final time")
    converge.add_argument("--base-n", type=int, default=64, help="sites at the coarsest level")
    converge.add_argument("--levels", type=int, default=4, help="number of epsilon-halving levels")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> run_config.RunConfig:
    """Parse command-line arguments into a RunConfig. Raises SystemExit(2) on usage errors, like argparse."""
    parser = build_parser()
    args = parser.parse_args(argv)
    values = {k: v for k, v in vars(args).items() if k != "verbose"}
    values["formats"] = tuple(fmt.strip() for fmt in values["formats"].split(",") if fmt.strip())
    try:
        config = run_config.RunConfig(**values)
    except ConfigError as e:
        parser.error(str(e))
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    return run(config)
