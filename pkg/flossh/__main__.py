#!/usr/bin/env python
# 786
# Flossh source: __main__.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Dict, List, Optional
import logbook
import logbook.more
import logbook.base
import argparse
import platform
import sys
import traceback
import pytest

from .common import (
    log,
    td,
    FlosshException,
    ConfigError,
    ContractError,
    DomainError,
    EvaluationError,
    NumericError,
    UnsupportedConfiguration,
)
from .config import RunConfig
from .drive import field_samples
from .lattice import edge_weight, static_spectrum
from .output import write_field_csv, write_spectrum_csv
from .sweep import BOUNDARY_MAX_G, edge_transitions, phase_boundary, sweep_g
from .validate import run_validation
from .version import __version__


USAGE_ERROR, CONFIG_ERROR, NUMERIC_ERROR = 1, 2, 3
"""Process exit statuses."""


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def main(argv: List[str]) -> int:
    """
    The main entry point.

    :returns: Process exit status.
    """

    try:
        parser, args = _get_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else USAGE_ERROR

    # Set the logging verbosity
    level = (args.verbosity if "verbosity" in args else "I").lower()
    level = next(
        (
            v
            for k, v in logbook.base._reverse_level_names.items()
            if k.lower().startswith(level)
        ),
        logbook.INFO,
    )

    # Set the command-line logging
    sh = logbook.more.ColorizedStderrHandler(
        format_string="{record.message}", level=level
    )
    handlers = [sh]
    if "log" in args and args.log:
        fh = logbook.FileHandler(
            args.log, mode="w", bubble=True, level="TRACE"  # type: ignore
        )
        fh.formatter = lambda record, _: record.message  # type: ignore
        handlers.append(fh)

    with logbook.NestedSetup(handlers).applicationbound():
        log.info(
            "Flossh v{} (Python {} on {})",
            __version__,
            platform.python_version(),
            platform.system(),
        )
        try:
            return _run(parser, args)
        except (ConfigError, ContractError, DomainError) as ex:
            log.critical("ERROR: {}", str(ex))
            log.debug(traceback.format_exc())
            return CONFIG_ERROR
        except UnsupportedConfiguration as ex:
            log.critical("ERROR: {}", str(ex))
            return CONFIG_ERROR
        except (NumericError, EvaluationError) as ex:
            log.critical("ERROR: {}", str(ex))
            log.debug(traceback.format_exc())
            return NUMERIC_ERROR
        except IOError as ex:
            if ex.filename is not None:
                log.critical("ERROR: {} cannot be accessed", ex.filename)
            else:
                log.critical("ERROR: {} cannot be accessed", str(ex))
            log.debug(traceback.format_exc())
            return USAGE_ERROR
        except SystemExit as ex:
            log.debug(repr(ex))
            return ex.code if isinstance(ex.code, int) else USAGE_ERROR
        except Exception as ex:
            log.critical("ERROR: {}", repr(ex))
            log.debug(traceback.format_exc())
            return USAGE_ERROR


def _run(parser, args) -> int:
    if not args.subparser or args.subparser == "help":
        parser.print_help()
    elif args.subparser == "test":
        return _run_test()
    elif args.subparser == "validate":
        results = run_validation(quick=args.quick)
        return 0 if all(r.passed for r in results) else NUMERIC_ERROR
    elif args.subparser == "boundary":
        _boundary(args)
    else:
        config = RunConfig.load(args.config, _parse_params(args.param))
        if args.subparser == "static":
            _static(config)
        elif args.subparser == "field":
            _field(config, args)
        elif args.subparser == "sweep":
            return _sweep(config, args)
        else:
            raise FlosshException("Invalid sub-command " + args.subparser)
    return 0


def _get_args(argv):
    """
    Parse command-line arguments.
    """

    parser = _Parser(
        prog="flossh",
        description=td(
            """Floquet spectra and edge states of a light-driven SSH chain.
               Energies are measured in units of the inter-cell hopping w
               and frequencies in units of w/ħ (ħ = 1)."""
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    base = argparse.ArgumentParser(add_help=False)
    base.add_argument(
        "--verbosity",
        "-v",
        default="INFO",
        help=td(
            """Logging verbosity:
               - T (trace)
               - D (debug)
               - I (info) and
               - W (warn).
               Default is "I" (info)."""
        ),
    )
    base.add_argument("--log", "-l", default=None, help="Log file location")

    cfg = argparse.ArgumentParser(add_help=False)
    cfg.add_argument(
        "--config",
        "-c",
        default=None,
        help=td(
            """Run configuration: a YAML file or one of the bundled presets
               (topological, trivial-r04, trivial-r06, gaussian-c10,
               gaussian-c5, beating-w2, beating-w5).
               Default parameters are used if omitted."""
        ),
    )
    cfg.add_argument(
        "--param",
        action="append",
        nargs="+",
        help="Configuration overrides in the form section.key=value.",
    )

    subparsers = parser.add_subparsers(dest="subparser")

    _ = subparsers.add_parser(
        "static",
        parents=[base, cfg],
        help="Show the static spectrum and the zero-energy edge modes.",
    )

    sweep_parser = subparsers.add_parser(
        "sweep",
        parents=[base, cfg],
        help="Compute Floquet spectra over the coupling grid of a configuration.",
    )
    sweep_parser.add_argument(
        "--output",
        "-o",
        default=None,
        help="Output CSV location. Default is output.path (or standard output).",
    )
    sweep_parser.add_argument(
        "--workers",
        "-w",
        type=int,
        default=None,
        help="Number of worker processes. Default is $FLOSSH_WORKERS or CPU count.",
    )
    sweep_parser.add_argument(
        "--reproducible",
        action="store_true",
        default=False,
        help="Omit the timestamp comment for byte-identical output.",
    )

    boundary_parser = subparsers.add_parser(
        "boundary",
        parents=[base],
        help="Find the couplings where |v J0(rg)| = |w J0((1-r)g)|.",
    )
    boundary_parser.add_argument("--v", type=float, default=0.3, help="Default: 0.3")
    boundary_parser.add_argument("--w", type=float, default=1.0, help="Default: 1")
    boundary_parser.add_argument("--r", type=float, default=0.0, help="Default: 0")
    boundary_parser.add_argument(
        "--gmax",
        type=float,
        default=8.0,
        help=f"Largest coupling (at most {BOUNDARY_MAX_G:g}). Default: 8",
    )

    validate_parser = subparsers.add_parser(
        "validate",
        parents=[base],
        help="Run the oracle cross-check suite.",
    )
    validate_parser.add_argument(
        "--quick",
        action="store_true",
        default=False,
        help="Use fewer propagator steps.",
    )

    field_parser = subparsers.add_parser(
        "field",
        parents=[base, cfg],
        help="Emit samples t,E of the normalized drive field.",
    )
    field_parser.add_argument("--samples", "-n", type=int, default=512)
    field_parser.add_argument(
        "--periods",
        type=float,
        default=2.0,
        help="Base periods covered by periodic drives. Default: 2",
    )
    field_parser.add_argument(
        "--output", "-o", default=None, help="Output location (standard output)."
    )

    _ = subparsers.add_parser(
        "test",
        parents=[base],
        help="Run Flossh test suite.",
    )

    _ = subparsers.add_parser(
        "help", parents=[base], help="Show program usage and exit."
    )

    return parser, parser.parse_args(argv)


def _parse_params(param) -> Dict[str, str]:
    params = {}
    if param:
        for pl in param:
            for p in pl:
                if "=" not in p:
                    raise ConfigError(f"Invalid parameter {p}")
                k, v = p.split("=", 1)
                params[k.replace("-", "_")] = v
    return params


def _open_output(path: Optional[str]):
    if not path or path == "-":
        return sys.stdout
    return open(path, "w")


def _static(config: RunConfig) -> None:
    """
    Report the static spectrum and the zero-energy edge modes.
    """

    geom = config.geometry()
    energies, states = static_spectrum(geom)
    log.info(
        "Static {}: {} levels in [{:.6f}, {:.6f}]",
        geom,
        len(energies),
        energies[0],
        energies[-1],
    )
    found = 0
    for i, e in enumerate(energies):
        wt = edge_weight(states[:, i], geom, config.edge_cells)
        if abs(e) < config.energy_window and wt > config.weight_threshold:
            log.info("  edge mode {:3}: E= {:+.10f} edge weight= {:.4f}", i, e, wt)
            found += 1
    log.info(
        "{} edge mode(s) (|E| < {}, weight > {})",
        found,
        config.energy_window,
        config.weight_threshold,
    )


def _boundary(args) -> None:
    """
    Print the phase boundary roots, one per line.
    """

    b = phase_boundary(args.v, args.w, args.r, args.gmax)
    log.info(
        "Phase boundary for v={} w={} r={} in (0, {}]:",
        args.v,
        args.w,
        args.r,
        args.gmax,
    )
    if b.degenerate:
        log.info("  degenerate: both hoppings coincide for every coupling")
    elif not b.roots:
        log.info("  no roots")
    for g in b.roots:
        log.info("  {:.10f}", g)


def _field(config: RunConfig, args) -> None:
    d = config.drive()
    t, e = field_samples(d, args.samples, args.periods)
    output = _open_output(args.output)
    try:
        write_field_csv(t, e, output)
    finally:
        if output is not sys.stdout:
            output.close()


def _sweep(config: RunConfig, args) -> int:
    """
    Run the configured sweep and write the spectrum table.

    :returns: Exit status (non-zero only if every grid point failed).
    """

    geom = config.geometry()
    log.info(
        "Sweeping {} with {} over g in [{}, {}]",
        geom,
        config.drive(),
        config.g_min,
        config.g_max,
    )
    result = sweep_g(
        geom,
        config.drive(),
        config.g_grid(),
        config.m_max,
        method=config.method,
        q=config.quadrature(),
        population_kind=config.population,
        fold_quasienergies=config.fold,
        energy_window=config.energy_window,
        weight_threshold=config.weight_threshold,
        n_edge_cells=config.edge_cells,
        workers=args.workers,
    )
    output = _open_output(args.output or config.path)
    try:
        write_spectrum_csv(result, output, config, args.reproducible)
    finally:
        if output is not sys.stdout:
            output.close()

    log.info("{} rows for {} couplings", len(result.rows), len(result.g_grid))
    for g, before, after in edge_transitions(result):
        log.info("  edge states: {} -> {} at g= {:.6f}", before, after, g)
    if 0 < config.g_max <= BOUNDARY_MAX_G:
        b = phase_boundary(config.v, config.w, config.r, config.g_max)
        if not b.degenerate and b.roots:
            roots = ", ".join(f"{g:.6f}" for g in b.roots)
            log.info("  high-frequency phase boundary: {}", roots)
    if result.failures:
        log.warn("{} of {} couplings failed", len(result.failures), len(result.g_grid))
    if len(result.failures) == len(result.g_grid):
        return NUMERIC_ERROR
    return 0


def _run_test() -> int:
    """
    Run the Flossh test suite.
    """

    return int(pytest.main(["--pyargs", "flossh"]))


def console():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    console()
